//! Constructive rainbow-matching algorithms.
//!
//! Every solver checks its preconditions and reports violations as
//! [`Error::Precondition`]. Assertions that a theorem guarantees (and that
//! therefore only fail on a bug or a genuine counterexample) surface as
//! [`Error::TheoremViolation`]. Solvers whose success is not guaranteed
//! return [`Outcome::NotFound`] instead of an error.
//!
//! Solvers that shift their input first return matchings of the original,
//! unshifted family.

use std::fmt::Write as _;

use crate::error::{invalid, precondition, violation, Error, Result};
use crate::extremal::f_r2;
use crate::ground::{binomial, Edge, GroundKind, GroundSet, Vertex};
use crate::hypergraph::{Family, Hypergraph, RainbowMatching};
use crate::shifting::{is_shifted, pullback_rainbow, shifted_closure, ShiftMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(RainbowMatching),
    NotFound { reason: String },
}

impl Outcome {
    pub fn matching(&self) -> Option<&RainbowMatching> {
        match self {
            Outcome::Found(m) => Some(m),
            Outcome::NotFound { .. } => None,
        }
    }

    fn not_found(reason: impl Into<String>) -> Self {
        Outcome::NotFound { reason: reason.into() }
    }
}

fn require_bipartite(f: &Family) -> Result<()> {
    let g = f.ground();
    if g.kind() != GroundKind::Partite || g.r() != 2 {
        return Err(invalid!("expected a bipartite family on [n]^2, got {}", g));
    }
    Ok(())
}

fn require_sizes_above(f: &Family, bound: u64) -> Result<()> {
    if let Some(i) = f.sizes().iter().position(|&s| s as u64 <= bound) {
        return Err(precondition!("|F_{}| = {} is not above the bound {}", i + 1, f.member(i).len(), bound));
    }
    Ok(())
}

/// Outcome of the Hall-type size check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallCheck {
    pub holds: bool,
    /// On failure, original indices of a violating index set `I`.
    pub witness: Option<Vec<usize>>,
}

/// Checks `Σ_{i∈I} |F_i| > n|I|(|I|-1)` for every nonempty `I ⊆ [k]`.
///
/// For a fixed `|I| = j` the left side is smallest on the `j` smallest
/// members, so only the `k` ascending prefixes are examined.
pub fn check_hall_condition(f: &Family) -> Result<HallCheck> {
    require_bipartite(f)?;
    let n = f.ground().n() as u64;
    let order = f.order_by_size();
    let mut sum = 0u64;
    for (j, &i) in order.iter().enumerate() {
        let j1 = j as u64 + 1;
        sum += f.member(i).len() as u64;
        if sum <= n * j1 * (j1 - 1) {
            let mut witness = order[..=j].to_vec();
            witness.sort_unstable();
            return Ok(HallCheck { holds: false, witness: Some(witness) });
        }
    }
    Ok(HallCheck { holds: true, witness: None })
}

/// The edge picked at one step of the longest-edge algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choice {
    pub edge: Edge,
    pub length: usize,
    pub tail: Vertex,
    pub head: Vertex,
    /// Contained in the final initial segment `R`.
    pub short: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based step number.
    pub t: usize,
    /// Original index of the member served at this step.
    pub member: usize,
    /// First uncovered index on side M (0-based; `n` if none).
    pub a: usize,
    /// First uncovered index on side W (0-based; `n` if none).
    pub b: usize,
    /// `Z_t`: vertices covered by earlier choices.
    pub covered: Vec<Vertex>,
    /// `None` at the step where the algorithm halts.
    pub choice: Option<Choice>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceOutcome {
    Success(RainbowMatching),
    Halt { t: usize },
}

/// Full record of a run of [`hall_size_algorithm`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgoTrace {
    pub n: usize,
    /// `order[t-1]` is the original member served at step `t`.
    pub order: Vec<usize>,
    pub steps: Vec<StepRecord>,
    /// First uncovered indices after the last step; they define the final `R`.
    pub final_a: usize,
    pub final_b: usize,
    pub outcome: TraceOutcome,
}

/// `R = {m_1..m_a} ∪ {w_1..w_b}` (0-based exclusive bounds), M side first.
pub fn initial_segment(a: usize, b: usize) -> Vec<Vertex> {
    (0..a).map(|i| Vertex::new(0, i)).chain((0..b).map(|j| Vertex::new(1, j))).collect()
}

fn in_segment(v: Vertex, a: usize, b: usize) -> bool {
    if v.side == 0 {
        v.index < a
    } else {
        v.index < b
    }
}

impl AlgoTrace {
    pub fn succeeded(&self) -> bool {
        matches!(self.outcome, TraceOutcome::Success(_))
    }

    pub fn matching(&self) -> Option<&RainbowMatching> {
        match &self.outcome {
            TraceOutcome::Success(m) => Some(m),
            TraceOutcome::Halt { .. } => None,
        }
    }

    /// Line-oriented rendering with 1-based `m_i`/`w_j` labels, one line per
    /// step, closed by a terminal `R` line and `SUCCESS` or `HALT at t=..`.
    pub fn to_text(&self) -> String {
        let ground = GroundSet::partite(2, self.n).expect("trace ground set");
        let set = |a: usize, b: usize| {
            let labels: Vec<String> = initial_segment(a, b).into_iter().map(|v| ground.vertex_label(v)).collect();
            format!("{{{}}}", labels.join(","))
        };
        let mut out = String::new();
        for s in &self.steps {
            let _ = write!(out, "t={t} a_{t}={} b_{t}={} R_{t}={}", s.a + 1, s.b + 1, set(s.a, s.b), t = s.t);
            if let Some(c) = &s.choice {
                let _ = write!(
                    out,
                    " e_{}={} in F_{} length={} tail={} head={} {}",
                    s.t,
                    ground.edge_label(&c.edge, ""),
                    s.member + 1,
                    c.length,
                    ground.vertex_label(c.tail),
                    ground.vertex_label(c.head),
                    if c.short { "short" } else { "long" }
                );
            }
            out.push('\n');
        }
        match &self.outcome {
            TraceOutcome::Success(_) => {
                let t = self.steps.len() + 1;
                let _ = writeln!(
                    out,
                    "t={t} a_{t}={} b_{t}={} R_{t}={}",
                    self.final_a + 1,
                    self.final_b + 1,
                    set(self.final_a, self.final_b)
                );
                out.push_str("SUCCESS\n");
            }
            TraceOutcome::Halt { t } => {
                let _ = writeln!(out, "HALT at t={t}");
            }
        }
        out
    }
}

fn first_free(used: &[bool]) -> usize {
    used.iter().position(|&u| !u).unwrap_or(used.len())
}

fn check_tails(steps: &[StepRecord], a: usize, b: usize, t: usize) -> Result<()> {
    for s in steps {
        if let Some(c) = &s.choice {
            if !in_segment(c.tail, a, b) {
                return Err(violation!("tail of e_{} is not in R_{}", s.t, t));
            }
        }
    }
    Ok(())
}

/// The longest-edge algorithm for bipartite families satisfying the
/// Hall-type size condition.
///
/// Members must be shifted. They are served in ascending order of size; at
/// step `t` the algorithm takes a longest edge of `F_t` avoiding the covered
/// set `Z_t`, where the length of `(m_p, w_q)` is `|(q - b_t) - (p - a_t)|`.
/// Among longest edges one through `w_{b_t}` is preferred, then the
/// lexicographically smallest.
pub fn hall_size_algorithm(f: &Family) -> Result<AlgoTrace> {
    require_bipartite(f)?;
    for (i, h) in f.members().iter().enumerate() {
        if !is_shifted(h, ShiftMode::Partite)? {
            return Err(precondition!("F_{} is not shifted; run the shifted closure first", i + 1));
        }
    }
    let n = f.ground().n();
    let order = f.order_by_size();
    let mut used_m = vec![false; n];
    let mut used_w = vec![false; n];
    let mut steps: Vec<StepRecord> = Vec::with_capacity(order.len());
    let mut chosen: Vec<Edge> = Vec::with_capacity(order.len());

    for (pos, &member) in order.iter().enumerate() {
        let t = pos + 1;
        let (a, b) = (first_free(&used_m), first_free(&used_w));
        check_tails(&steps, a, b, t)?;
        let covered: Vec<Vertex> = (0..n)
            .filter(|&i| used_m[i])
            .map(|i| Vertex::new(0, i))
            .chain((0..n).filter(|&j| used_w[j]).map(|j| Vertex::new(1, j)))
            .collect();

        // key: (length, passes through w_b); the first maximum in lex order wins
        let mut best: Option<(&Edge, usize, bool)> = None;
        for e in f.member(member).edges() {
            let (p, q) = (e.get(0), e.get(1));
            if used_m[p] || used_w[q] {
                continue;
            }
            let length = ((q - b) as i64 - (p - a) as i64).unsigned_abs() as usize;
            let through_w = q == b;
            if best.is_none_or(|(_, l, w)| (length, through_w) > (l, w)) {
                best = Some((e, length, through_w));
            }
        }

        let Some((edge, length, _)) = best else {
            steps.push(StepRecord { t, member, a, b, covered, choice: None });
            return Ok(finish(n, order, steps, a, b, TraceOutcome::Halt { t }));
        };
        let (p, q) = (edge.get(0), edge.get(1));
        if p != a && q != b {
            return Err(violation!(
                "e_{t} = (m_{}, w_{}) contains neither m_{} nor w_{}",
                p + 1,
                q + 1,
                a + 1,
                b + 1
            ));
        }
        let (tail, head) =
            if p == a { (Vertex::new(0, p), Vertex::new(1, q)) } else { (Vertex::new(1, q), Vertex::new(0, p)) };
        used_m[p] = true;
        used_w[q] = true;
        chosen.push(edge.clone());
        steps.push(StepRecord {
            t,
            member,
            a,
            b,
            covered,
            choice: Some(Choice { edge: edge.clone(), length, tail, head, short: false }),
        });
    }

    let (a, b) = (first_free(&used_m), first_free(&used_w));
    check_tails(&steps, a, b, steps.len() + 1)?;
    let matching = RainbowMatching::new(chosen).unpermute(&order);
    Ok(finish(n, order, steps, a, b, TraceOutcome::Success(matching)))
}

fn finish(
    n: usize,
    order: Vec<usize>,
    mut steps: Vec<StepRecord>,
    final_a: usize,
    final_b: usize,
    outcome: TraceOutcome,
) -> AlgoTrace {
    for s in &mut steps {
        if let Some(c) = &mut s.choice {
            c.short = c.edge.get(0) < final_a && c.edge.get(1) < final_b;
        }
    }
    AlgoTrace { n, order, steps, final_a, final_b, outcome }
}

/// Greedy solver for bipartite families with every `|F_i| > (k-1)n`.
///
/// Picks distinct `v_1..v_k` on side M with `deg_{F_i}(v_i) >= k - i + 1`,
/// then edges `e_k, ..., e_1` with `v_i ∈ e_i` avoiding the later edges.
/// Runs on any bipartite family; failing above the bound is a violation.
pub fn greedy_bipartite(f: &Family) -> Result<Outcome> {
    require_bipartite(f)?;
    let n = f.ground().n();
    let k = f.k();
    let out = greedy_picks(f, n, k);
    if let Outcome::NotFound { reason } = &out {
        if f.sizes().iter().all(|&s| s > (k - 1) * n) {
            return Err(violation!("greedy failed above (k-1)n: {reason}"));
        }
    }
    Ok(out)
}

fn greedy_picks(f: &Family, n: usize, k: usize) -> Outcome {
    let mut picked: Vec<usize> = Vec::with_capacity(k);
    let mut taken = vec![false; n];
    for (i, h) in f.members().iter().enumerate() {
        let need = k - i;
        let degrees = h.degrees();
        let best = (0..n).filter(|&v| !taken[v]).max_by_key(|&v| (degrees[v], std::cmp::Reverse(v)));
        match best {
            Some(v) if degrees[v] >= need => {
                taken[v] = true;
                picked.push(v);
            }
            _ => {
                return Outcome::not_found(format!(
                    "no unused vertex of side M has degree >= {need} in F_{}",
                    i + 1
                ))
            }
        }
    }
    let mut used_w = vec![false; n];
    let mut choices = vec![Edge::new([]); k];
    for i in (0..k).rev() {
        let v = Vertex::new(0, picked[i]);
        let Some(e) = f.member(i).incident(v).find(|e| !used_w[e.get(1)]) else {
            return Outcome::not_found(format!("every edge of F_{} at m_{} is blocked", i + 1, picked[i] + 1));
        };
        used_w[e.get(1)] = true;
        choices[i] = e.clone();
    }
    Outcome::Found(RainbowMatching::new(choices))
}

/// Rainbow matching for families of subgraphs of `K_n` above `f(n, 2, k)`.
///
/// After shifting, `e_i = (v_i, v_{2k-i+1})` lies in `F_i` for every `i`,
/// and those edges are pairwise disjoint; the matching is then pulled back.
pub fn meshulam_r2(f: &Family) -> Result<RainbowMatching> {
    let g = f.ground();
    if g.kind() != GroundKind::General || g.r() != 2 {
        return Err(invalid!("expected a family of graphs on K_n, got {}", g));
    }
    let (n, k) = (g.n(), f.k());
    if n < 2 * k {
        return Err(precondition!("need n >= 2k (got n={n}, k={k})"));
    }
    require_sizes_above(f, f_r2(n, k)?)?;
    let (shifted, log) = shifted_closure(f, ShiftMode::Global)?;
    let mut choices = Vec::with_capacity(k);
    for i in 0..k {
        let e = Edge::from([i as u32, (2 * k - 1 - i) as u32]);
        if !shifted.member(i).contains(&e) {
            return Err(violation!("shifted F_{} does not contain (v_{}, v_{})", i + 1, i + 1, 2 * k - i));
        }
        choices.push(e);
    }
    pullback_rainbow(&log, f, &RainbowMatching::new(choices))
}

/// Rainbow matching for 3-partite families with every `|F_i| > (k-1)n^2`.
///
/// Shifts, assigns members to `v_1, ..., v_k` of side 1 greedily by maximal
/// degree (lowest index on ties), takes the links of those vertices as a
/// bipartite family, solves it with [`hall_size_algorithm`] and lifts.
pub fn r3_solve(f: &Family) -> Result<RainbowMatching> {
    let g = *f.ground();
    if g.kind() != GroundKind::Partite || g.r() != 3 {
        return Err(invalid!("expected a 3-partite family, got {}", g));
    }
    let (n, k) = (g.n(), f.k());
    require_sizes_above(f, crate::extremal::g_formula(n, 3, k))?;
    let (shifted, log) = shifted_closure(f, ShiftMode::Partite)?;

    let mut remaining: Vec<usize> = (0..k).collect();
    let mut assigned = Vec::with_capacity(k);
    for j in 0..k {
        let v = Vertex::new(0, j);
        let (slot, _) = remaining
            .iter()
            .enumerate()
            .map(|(slot, &i)| (slot, shifted.member(i).degree(v).expect("vertex in range")))
            .max_by_key(|&(slot, d)| (d, std::cmp::Reverse(slot)))
            .expect("k <= n under the size bound");
        assigned.push(remaining.remove(slot));
    }

    let plane = GroundSet::partite(2, n)?;
    let links = assigned
        .iter()
        .enumerate()
        .map(|(j, &i)| {
            let pairs = shifted.member(i).incident(Vertex::new(0, j)).map(|e| Edge::from([e.as_slice()[1], e.as_slice()[2]]));
            Hypergraph::from_edges(plane, pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    let links = Family::new(links)?;
    let hall = check_hall_condition(&links)?;
    if !hall.holds {
        return Err(violation!(
            "links violate the Hall-type size condition on {:?}",
            hall.witness.unwrap_or_default().iter().map(|i| i + 1).collect::<Vec<_>>()
        ));
    }
    let trace = hall_size_algorithm(&links)?;
    let Some(link_matching) = trace.matching() else {
        return Err(violation!("longest-edge algorithm halted on links satisfying the size condition"));
    };
    let mut choices = vec![Edge::new([]); k];
    for (j, &i) in assigned.iter().enumerate() {
        let pair = link_matching.choices[j].as_slice();
        choices[i] = Edge::from([j as u32, pair[0], pair[1]]);
    }
    pullback_rainbow(&log, f, &RainbowMatching::new(choices))
}

/// `d[i][j] = deg_{F_i}(w_j)` for a bipartite family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMatrix {
    pub k: usize,
    pub n: usize,
    pub entries: Vec<Vec<usize>>,
}

impl DegreeMatrix {
    pub fn from_family(f: &Family) -> Result<Self> {
        require_bipartite(f)?;
        let n = f.ground().n();
        let entries = f
            .members()
            .iter()
            .map(|h| {
                let mut row = vec![0; n];
                for e in h.edges() {
                    row[e.get(1)] += 1;
                }
                row
            })
            .collect();
        Ok(DegreeMatrix { k: f.k(), n, entries })
    }

    pub fn new(entries: Vec<Vec<usize>>) -> Result<Self> {
        let k = entries.len();
        let n = entries.first().map_or(0, Vec::len);
        if k == 0 || entries.iter().any(|row| row.len() != n) {
            return Err(invalid!("degree matrix must be a non-empty rectangle"));
        }
        Ok(DegreeMatrix { k, n, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.entries.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn row_nonincreasing(&self, i: usize) -> bool {
        self.entries[i].windows(2).all(|w| w[0] >= w[1])
    }
}

/// Perfect matching of columns to rows in a square 0/1 matrix by augmenting
/// paths. Returns `col_to_row`.
pub fn perfect_assignment(ones: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn augment(col: usize, ones: &[Vec<bool>], seen: &mut [bool], row_of: &mut [Option<usize>], col_of: &mut [usize]) -> bool {
        for row in 0..ones.len() {
            if !ones[row][col] || seen[row] {
                continue;
            }
            seen[row] = true;
            let free = match row_of[row] {
                None => true,
                Some(other) => augment(other, ones, seen, row_of, col_of),
            };
            if free {
                row_of[row] = Some(col);
                col_of[col] = row;
                return true;
            }
        }
        false
    }
    let k = ones.len();
    let mut row_of = vec![None; k];
    let mut col_of = vec![usize::MAX; k];
    for col in 0..k {
        let mut seen = vec![false; k];
        if !augment(col, ones, &mut seen, &mut row_of, &mut col_of) {
            return None;
        }
    }
    Some(col_of)
}

/// Rainbow matching for bipartite families with `|F_i| >= i·n` (after
/// sorting by size) when `n > C(k, 2)`.
///
/// Shifts, marks `m_{i,j} = 1` when `deg_{F_i}(w_j) > k - j`, finds a
/// permutation `π` with `m_{π(j), j} = 1` and matches `w_k, ..., w_1` in
/// `F_{π(k)}, ..., F_{π(1)}` greedily.
pub fn simple_algorithm(f: &Family) -> Result<RainbowMatching> {
    require_bipartite(f)?;
    let (n, k) = (f.ground().n(), f.k());
    if n as u64 <= binomial(k as u64, 2) {
        return Err(precondition!("need n > C(k,2) (got n={n}, k={k})"));
    }
    let mut sizes = f.sizes();
    sizes.sort_unstable();
    if let Some(i) = (0..k).find(|&i| sizes[i] < (i + 1) * n) {
        return Err(precondition!(
            "the {}-th smallest member has {} edges, fewer than {}",
            i + 1,
            sizes[i],
            (i + 1) * n
        ));
    }
    let (shifted, log) = shifted_closure(f, ShiftMode::Partite)?;
    let degrees = DegreeMatrix::from_family(&shifted)?;
    let ones: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| degrees.get(i, j) > k - 1 - j).collect()).collect();
    let Some(pi) = perfect_assignment(&ones) else {
        return Err(violation!("no permutation selects degrees above k - j"));
    };
    let mut used_m = vec![false; n];
    let mut choices = vec![Edge::new([]); k];
    for j in (0..k).rev() {
        let member = pi[j];
        let Some(e) = shifted.member(member).incident(Vertex::new(1, j)).find(|e| !used_m[e.get(0)]) else {
            return Err(violation!("w_{} has no free partner in F_{}", j + 1, member + 1));
        };
        used_m[e.get(0)] = true;
        choices[member] = e.clone();
    }
    pullback_rainbow(&log, f, &RainbowMatching::new(choices))
}

/// The procedure behind the large-`n` result for `r`-partite families with
/// every `|F_i| > (k-1)n^(r-1)`.
///
/// With `A` the first `k - 1` vertices of every side, picks `e_i ∈ F_i`
/// meeting `A` in a single fresh point `x_i` (`i < k`), then `e_k ∈ F_k`
/// missing all `x_i` (fewest `A`-vertices first), and finally lowers every
/// other coordinate of each `e_i` into an unused vertex of `A`. Any stuck
/// step yields [`Outcome::NotFound`]; success is only guaranteed for large
/// `n`.
pub fn large_n_procedure(f: &Family) -> Result<Outcome> {
    let g = *f.ground();
    if g.kind() != GroundKind::Partite {
        return Err(invalid!("expected an r-partite family, got {}", g));
    }
    let (n, r, k) = (g.n(), g.r(), f.k());
    require_sizes_above(f, crate::extremal::g_formula(n, r, k))?;
    let (shifted, log) = shifted_closure(f, ShiftMode::Partite)?;
    let in_a = |v: Vertex| v.index + 1 < k;
    let a_points = |e: &Edge| g.vertices(e).filter(|&v| in_a(v)).collect::<Vec<_>>();

    let mut xs: Vec<Vertex> = Vec::with_capacity(k - 1);
    let mut firsts: Vec<Edge> = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let found = shifted.member(i).edges().iter().find_map(|e| match a_points(e)[..] {
            [x] if !xs.contains(&x) => Some((x, e.clone())),
            _ => None,
        });
        let Some((x, e)) = found else {
            return Ok(Outcome::not_found(format!("no edge of F_{} meets A in exactly one unused point", i + 1)));
        };
        xs.push(x);
        firsts.push(e);
    }

    let last = shifted
        .member(k - 1)
        .edges()
        .iter()
        .filter(|e| xs.iter().all(|&x| !g.contains_vertex(e, x)))
        .min_by_key(|e| (a_points(e).len(), (*e).clone()));
    let Some(last) = last.cloned() else {
        return Ok(Outcome::not_found(format!("every edge of F_{k} meets some x_i")));
    };

    let mut blocked = vec![false; g.vertex_count()];
    for v in g.vertices(&last).chain(xs.iter().copied()) {
        blocked[g.vertex_id(v)] = true;
    }
    let mut choices = Vec::with_capacity(k);
    for i in 0..k - 1 {
        let x = xs[i];
        let mut coords = Vec::with_capacity(r);
        for side in 0..r {
            if side == x.side {
                coords.push(x.index as u32);
                continue;
            }
            let own = firsts[i].get(side);
            let pick = (0..k - 1)
                .find(|&idx| !blocked[g.vertex_id(Vertex::new(side, idx))])
                .or_else(|| (!blocked[g.vertex_id(Vertex::new(side, own))]).then_some(own));
            let Some(idx) = pick else {
                return Ok(Outcome::not_found(format!("no free vertex on side {} for F_{}", side + 1, i + 1)));
            };
            coords.push(idx as u32);
        }
        let lowered = Edge::new(coords);
        if !shifted.member(i).contains(&lowered) {
            return Err(violation!("lowered edge {} missing from shifted F_{}", g.edge_label(&lowered, " "), i + 1));
        }
        for v in g.vertices(&lowered) {
            blocked[g.vertex_id(v)] = true;
        }
        choices.push(lowered);
    }
    choices.push(last);
    let m = RainbowMatching::new(choices);
    if let Err(e) = m.validate(&shifted) {
        return Err(violation!("large-n procedure produced an invalid matching: {e}"));
    }
    Ok(Outcome::Found(pullback_rainbow(&log, f, &m)?))
}

impl From<Outcome> for Option<RainbowMatching> {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Found(m) => Some(m),
            Outcome::NotFound { .. } => None,
        }
    }
}

/// Runs `solver` and validates a found matching against `f`.
pub fn validated<F>(f: &Family, solver: F) -> Result<Outcome>
where
    F: FnOnce(&Family) -> Result<Outcome>,
{
    let out = solver(f)?;
    if let Outcome::Found(m) = &out {
        m.validate(f).map_err(|e| Error::TheoremViolation(format!("solver output invalid: {e}")))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{star_family, steal_family};
    use crate::oracle::rainbow_exact;

    fn bip(n: usize) -> GroundSet {
        GroundSet::partite(2, n).unwrap()
    }

    #[test]
    fn hall_condition_examples() {
        let g = bip(3);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[0, 0]]).unwrap()]).unwrap();
        assert!(check_hall_condition(&f).unwrap().holds);
        let check = check_hall_condition(&steal_family(3, 6).unwrap()).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness, Some(vec![0, 1, 2, 3]));
        for k in 1..=3 {
            let f = Family::repeated(Hypergraph::complete(g), k).unwrap();
            assert!(check_hall_condition(&f).unwrap().holds);
        }
        let wrong = Family::new(vec![Hypergraph::empty(GroundSet::partite(3, 2).unwrap())]).unwrap();
        assert!(matches!(check_hall_condition(&wrong), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn steal_trace() {
        let trace = hall_size_algorithm(&steal_family(3, 6).unwrap()).unwrap();
        assert_eq!(trace.outcome, TraceOutcome::Halt { t: 4 });
        let picks: Vec<Edge> = trace.steps.iter().filter_map(|s| s.choice.as_ref().map(|c| c.edge.clone())).collect();
        assert_eq!(picks, vec![Edge::from([2, 0]), Edge::from([0, 5]), Edge::from([1, 4])]);
        let segments: Vec<(usize, usize)> = trace.steps.iter().map(|s| (s.a, s.b)).collect();
        assert_eq!(segments, vec![(0, 0), (0, 1), (1, 1), (3, 1)]);
        let shorts: Vec<bool> =
            trace.steps.iter().filter_map(|s| s.choice.as_ref().map(|c| c.short)).collect();
        assert_eq!(shorts, vec![true, false, false]);
        assert!(trace.to_text().ends_with("HALT at t=4\n"));
    }

    #[test]
    fn hall_single_member() {
        let g = bip(2);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[0, 0]]).unwrap()]).unwrap();
        let trace = hall_size_algorithm(&f).unwrap();
        assert_eq!(trace.matching().unwrap().choices, vec![Edge::from([0, 0])]);
        assert!(trace.to_text().ends_with("SUCCESS\n"));
    }

    #[test]
    fn hall_rejects_unshifted() {
        let g = bip(2);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[1, 1]]).unwrap()]).unwrap();
        assert!(matches!(hall_size_algorithm(&f), Err(Error::Precondition(_))));
    }

    #[test]
    fn greedy_examples() {
        let g = bip(2);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[1, 0]]).unwrap()]).unwrap();
        assert_eq!(greedy_bipartite(&f).unwrap().matching().unwrap().choices, vec![Edge::from([1, 0])]);
        let f = Family::repeated(Hypergraph::complete(g), 2).unwrap();
        let m = greedy_bipartite(&f).unwrap();
        m.matching().unwrap().validate(&f).unwrap();
        let stars = star_family(3, 2, 3).unwrap();
        assert!(matches!(greedy_bipartite(&stars).unwrap(), Outcome::NotFound { .. }));
    }

    #[test]
    fn meshulam_examples() {
        let k5 = GroundSet::general(5, 2).unwrap();
        let f = Family::new(vec![Hypergraph::from_tuples(k5, &[&[2, 4]]).unwrap()]).unwrap();
        let m = meshulam_r2(&f).unwrap();
        assert_eq!(m.choices, vec![Edge::from([2, 4])]);
        let star = crate::extremal::ekr_star(5, 2).unwrap();
        let pair = Family::repeated(star, 2).unwrap();
        assert!(matches!(meshulam_r2(&pair), Err(Error::Precondition(_))));
        assert_eq!(rainbow_exact(&pair), None);
        let too_small = Family::repeated(Hypergraph::complete(GroundSet::general(3, 2).unwrap()), 2).unwrap();
        assert!(matches!(meshulam_r2(&too_small), Err(Error::Precondition(_))));
    }

    #[test]
    fn r3_examples() {
        let g = GroundSet::partite(3, 3).unwrap();
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[2, 1, 2]]).unwrap()]).unwrap();
        assert_eq!(r3_solve(&f).unwrap().choices, vec![Edge::from([2, 1, 2])]);
        let sharp = star_family(3, 3, 3).unwrap();
        assert!(matches!(r3_solve(&sharp), Err(Error::Precondition(_))));
        assert_eq!(rainbow_exact(&sharp), None);
        let full = Family::repeated(Hypergraph::complete(g), 3).unwrap();
        r3_solve(&full).unwrap().validate(&full).unwrap();
    }

    #[test]
    fn simple_examples() {
        let g = bip(3);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[2, 0], &[2, 1], &[2, 2]]).unwrap()]).unwrap();
        simple_algorithm(&f).unwrap().validate(&f).unwrap();
        let empty_first = Family::new(vec![Hypergraph::empty(g), Hypergraph::complete(g)]).unwrap();
        assert!(matches!(simple_algorithm(&empty_first), Err(Error::Precondition(_))));
        let small_n = Family::repeated(Hypergraph::complete(bip(3)), 3).unwrap();
        assert!(matches!(simple_algorithm(&small_n), Err(Error::Precondition(_))));
    }

    #[test]
    fn perfect_assignment_cases() {
        let ones = vec![vec![true, false], vec![true, true]];
        let pi = perfect_assignment(&ones).unwrap();
        assert_eq!(pi, vec![0, 1]);
        let ones = vec![vec![false, false], vec![true, true]];
        assert_eq!(perfect_assignment(&ones), None);
        let ones = vec![vec![true, true], vec![true, false]];
        assert_eq!(perfect_assignment(&ones), Some(vec![1, 0]));
    }

    #[test]
    fn large_n_examples() {
        let g = bip(4);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[3, 3]]).unwrap()]).unwrap();
        assert_eq!(large_n_procedure(&f).unwrap().matching().unwrap().choices, vec![Edge::from([3, 3])]);
        let f = Family::repeated(Hypergraph::complete(bip(10)), 2).unwrap();
        let out = large_n_procedure(&f).unwrap();
        out.matching().unwrap().validate(&f).unwrap();
        let g3 = GroundSet::partite(3, 6).unwrap();
        let f = Family::repeated(Hypergraph::complete(g3), 3).unwrap();
        large_n_procedure(&f).unwrap().matching().unwrap().validate(&f).unwrap();
    }

    #[test]
    fn degree_matrix_rows() {
        let f = steal_family(3, 6).unwrap();
        let d = DegreeMatrix::from_family(&f).unwrap();
        assert_eq!(d.row_sums(), f.sizes());
        assert!((0..d.k).all(|i| d.row_nonincreasing(i)));
        assert_eq!(d.entries[1], vec![6, 3, 3, 3, 3, 3]);
    }
}
