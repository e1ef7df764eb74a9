//! The shifting (compression) operator `s_xy`.
//!
//! For `x < y`, `s_xy` replaces `y` by `x` in every edge that contains `y`
//! but not `x`, unless the resulting edge is already present. In the partite
//! setting `x` and `y` lie on the same side. Applied to a family, the same
//! `s_xy` is applied to every member.
//!
//! [`shifted_closure`] records every effective shift in a [`ShiftLog`] of
//! moved-edge deltas, and [`pullback_rainbow`] walks that log backwards to
//! turn a rainbow matching of the shifted family into one of the original.

use fixedbitset::FixedBitSet;

use crate::error::{invalid, violation, Result};
use crate::ground::{Edge, GroundKind, GroundSet, Vertex};
use crate::hypergraph::{Family, Hypergraph, RainbowMatching};

/// Which pairs `x < y` are eligible for shifting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftMode {
    /// All pairs of the single linear order of a general ground set.
    Global,
    /// Pairs lying on the same side of a partite ground set.
    Partite,
}

impl ShiftMode {
    /// The only mode that preserves edge validity for `ground`.
    pub fn for_ground(ground: &GroundSet) -> Self {
        match ground.kind() {
            GroundKind::Partite => ShiftMode::Partite,
            GroundKind::General => ShiftMode::Global,
        }
    }

    fn check(self, ground: &GroundSet) -> Result<()> {
        if self != Self::for_ground(ground) {
            return Err(invalid!("shift mode {self:?} does not apply to a {} ground set", ground.kind()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovedEdge {
    pub member: usize,
    pub from: Edge,
    pub to: Edge,
}

/// One effective application of `s_xy` to a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftStep {
    /// Side of `x` and `y`; always 0 for general ground sets.
    pub side: usize,
    pub x: usize,
    pub y: usize,
    pub moved: Vec<MovedEdge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftLog {
    pub steps: Vec<ShiftStep>,
}

impl ShiftLog {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn moves(&self) -> usize {
        self.steps.iter().map(|s| s.moved.len()).sum()
    }
}

/// `e ∪ {x} ∖ {y}` when `y ∈ e` and `x ∉ e`, ignoring the proviso.
pub fn shift_image(ground: &GroundSet, side: usize, x: usize, y: usize, e: &Edge) -> Option<Edge> {
    let (x32, y32) = (x as u32, y as u32);
    match ground.kind() {
        GroundKind::Partite => (e.get(side) == y).then(|| {
            let mut out = e.clone();
            out.as_mut_slice()[side] = x32;
            out
        }),
        GroundKind::General => {
            let s = e.as_slice();
            if s.binary_search(&y32).is_err() || s.binary_search(&x32).is_ok() {
                return None;
            }
            let mut v: Vec<u32> = s.iter().map(|&u| if u == y32 { x32 } else { u }).collect();
            v.sort_unstable();
            Some(Edge::new(v))
        }
    }
}

/// `e` with the vertex `from` replaced by `to` (both on `side`).
fn substitute(ground: &GroundSet, side: usize, from: usize, to: usize, e: &Edge) -> Edge {
    match ground.kind() {
        GroundKind::Partite => {
            let mut out = e.clone();
            out.as_mut_slice()[side] = to as u32;
            out
        }
        GroundKind::General => {
            let mut v: Vec<u32> =
                e.as_slice().iter().map(|&u| if u as usize == from { to as u32 } else { u }).collect();
            v.sort_unstable();
            Edge::new(v)
        }
    }
}

fn check_pair(ground: &GroundSet, side: usize, x: usize, y: usize) -> Result<()> {
    if x >= y {
        return Err(invalid!("shift needs x < y (got x={}, y={})", x + 1, y + 1));
    }
    if side >= ground.sides() {
        return Err(invalid!("side {} out of range for {}", side + 1, ground));
    }
    if y >= ground.n() {
        return Err(invalid!("vertex {} out of range for {}", y + 1, ground));
    }
    Ok(())
}

fn moves_for(h: &Hypergraph, member: usize, side: usize, x: usize, y: usize) -> Vec<MovedEdge> {
    let ground = h.ground();
    h.edges()
        .iter()
        .filter_map(|e| {
            let to = shift_image(ground, side, x, y, e)?;
            (!h.contains(&to)).then(|| MovedEdge { member, from: e.clone(), to })
        })
        .collect()
}

fn apply_moves(h: &Hypergraph, moves: &[&MovedEdge]) -> Hypergraph {
    if moves.is_empty() {
        return h.clone();
    }
    let ground = *h.ground();
    let mut edges: Vec<Edge> = h.edges().to_vec();
    let mut cells: FixedBitSet = h.cells().clone();
    for m in moves {
        cells.set(ground.edge_rank(&m.from), false);
        cells.insert(ground.edge_rank(&m.to));
    }
    edges.retain(|e| cells.contains(ground.edge_rank(e)));
    edges.extend(moves.iter().map(|m| m.to.clone()));
    Hypergraph::from_edges(ground, edges).expect("shift images are valid and distinct")
}

/// Applies `s_xy` on `side` to a single hypergraph. The step's moved edges
/// are tagged with member 0.
pub fn shift_hypergraph(h: &Hypergraph, side: usize, x: usize, y: usize) -> Result<(Hypergraph, ShiftStep)> {
    check_pair(h.ground(), side, x, y)?;
    let moved = moves_for(h, 0, side, x, y);
    let shifted = apply_moves(h, &moved.iter().collect::<Vec<_>>());
    Ok((shifted, ShiftStep { side, x, y, moved }))
}

/// Applies `s_xy` to every member of a family simultaneously.
pub fn shift_family(f: &Family, side: usize, x: usize, y: usize) -> Result<(Family, ShiftStep)> {
    check_pair(f.ground(), side, x, y)?;
    let mut moved = Vec::new();
    let mut members = Vec::with_capacity(f.k());
    for (i, h) in f.members().iter().enumerate() {
        let m = moves_for(h, i, side, x, y);
        members.push(apply_moves(h, &m.iter().collect::<Vec<_>>()));
        moved.extend(m);
    }
    Ok((Family::new(members)?, ShiftStep { side, x, y, moved }))
}

/// True iff replacing any vertex of any edge by a smaller vertex (on the same
/// side, in partite mode) gives an edge of `h`.
pub fn is_shifted(h: &Hypergraph, mode: ShiftMode) -> Result<bool> {
    let ground = h.ground();
    mode.check(ground)?;
    for e in h.edges() {
        for (pos, v) in ground.vertices(e).enumerate() {
            for smaller in 0..v.index {
                let side = v.side;
                let lowered = match ground.kind() {
                    GroundKind::Partite => substitute(ground, side, v.index, smaller, e),
                    GroundKind::General => {
                        if pos > 0 && e.as_slice().contains(&(smaller as u32)) {
                            continue;
                        }
                        substitute(ground, side, v.index, smaller, e)
                    }
                };
                if !h.contains(&lowered) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn family_is_shifted(f: &Family) -> bool {
    let mode = ShiftMode::for_ground(f.ground());
    f.members().iter().all(|h| is_shifted(h, mode).unwrap_or(false))
}

/// Shifts until nothing moves.
///
/// Each sweep visits sides in ascending order and, within a side, the pairs
/// `x < y` lexicographically. Every effective step lowers the total index
/// potential, so the loop terminates.
pub fn shifted_closure(f: &Family, mode: ShiftMode) -> Result<(Family, ShiftLog)> {
    let ground = *f.ground();
    mode.check(&ground)?;
    let n = ground.n();
    let mut current = f.clone();
    let mut log = ShiftLog::default();
    loop {
        let mut changed = false;
        for side in 0..ground.sides() {
            for x in 0..n {
                for y in x + 1..n {
                    let (next, step) = shift_family(&current, side, x, y)?;
                    if !step.moved.is_empty() {
                        changed = true;
                        current = next;
                        log.steps.push(step);
                    }
                }
            }
        }
        if !changed {
            return Ok((current, log));
        }
    }
}

/// Per-member membership bitmaps that can be stepped forward and backward
/// through a log.
struct FamilyState {
    ground: GroundSet,
    cells: Vec<FixedBitSet>,
}

impl FamilyState {
    fn new(f: &Family) -> Self {
        FamilyState { ground: *f.ground(), cells: f.members().iter().map(|h| h.cells().clone()).collect() }
    }

    fn contains(&self, member: usize, e: &Edge) -> bool {
        self.cells[member].contains(self.ground.edge_rank(e))
    }

    fn forward(&mut self, step: &ShiftStep) -> Result<()> {
        for m in &step.moved {
            if m.member >= self.cells.len() {
                return Err(invalid!("log refers to member {} of a {}-member family", m.member + 1, self.cells.len()));
            }
            self.ground.check_edge(&m.from)?;
            self.ground.check_edge(&m.to)?;
            if shift_image(&self.ground, step.side, step.x, step.y, &m.from).as_ref() != Some(&m.to) {
                return Err(invalid!("log entry {:?} -> {:?} is not a shift image", m.from.one_based(), m.to.one_based()));
            }
            if !self.contains(m.member, &m.from) || self.contains(m.member, &m.to) {
                return Err(invalid!("log does not replay on the given family"));
            }
            let (from, to) = (self.ground.edge_rank(&m.from), self.ground.edge_rank(&m.to));
            self.cells[m.member].set(from, false);
            self.cells[m.member].insert(to);
        }
        Ok(())
    }

    fn backward(&mut self, step: &ShiftStep) {
        for m in &step.moved {
            let (from, to) = (self.ground.edge_rank(&m.from), self.ground.edge_rank(&m.to));
            self.cells[m.member].set(to, false);
            self.cells[m.member].insert(from);
        }
    }

    fn to_family(&self) -> Result<Family> {
        let universe = self.ground.universe();
        Family::new(self.cells.iter().map(|c| Hypergraph::from_cells(self.ground, c.clone(), &universe)).collect())
    }
}

/// Replays a log forward from `original`.
pub fn replay(log: &ShiftLog, original: &Family) -> Result<Family> {
    let mut state = FamilyState::new(original);
    for step in &log.steps {
        check_pair(original.ground(), step.side, step.x, step.y)?;
        state.forward(step)?;
    }
    state.to_family()
}

/// Converts a rainbow matching of the shifted family back into a rainbow
/// matching of `original`, one logged step at a time.
///
/// At a step `s_xy`, let `e_i = a ∪ {x}` be the chosen edge through `x`. If
/// `e_i` already belonged to the pre-step member nothing changes. Otherwise
/// `e_i` was the image of `a ∪ {y}`: if no chosen edge contains `y`, `e_i`
/// becomes `a ∪ {y}`; if `e_s = b ∪ {y}` is chosen, then `b ∪ {x}` was
/// present before the step (or `e_s` would have moved) and the two edges
/// swap their `x`/`y` vertices.
pub fn pullback_rainbow(log: &ShiftLog, original: &Family, m: &RainbowMatching) -> Result<RainbowMatching> {
    let mut state = FamilyState::new(original);
    for step in &log.steps {
        check_pair(original.ground(), step.side, step.x, step.y)?;
        state.forward(step)?;
    }
    let shifted = state.to_family()?;
    m.validate(&shifted).map_err(|e| invalid!("matching is not a rainbow matching of the shifted family: {e}"))?;

    let ground = *original.ground();
    let mut choices = m.choices.clone();
    for step in log.steps.iter().rev() {
        state.backward(step);
        let (side, x, y) = (step.side, step.x, step.y);
        let xv = Vertex::new(side, x);
        let yv = Vertex::new(side, y);
        let Some(i) = choices.iter().position(|e| ground.contains_vertex(e, xv)) else {
            continue;
        };
        if state.contains(i, &choices[i]) {
            continue;
        }
        let preimage = substitute(&ground, side, x, y, &choices[i]);
        if !state.contains(i, &preimage) {
            return Err(violation!(
                "edge {} of F_{} has no preimage before s_{{{},{}}}",
                ground.edge_label(&choices[i], " "),
                i + 1,
                x + 1,
                y + 1
            ));
        }
        if let Some(s) = choices.iter().position(|e| ground.contains_vertex(e, yv)) {
            let partner = substitute(&ground, side, y, x, &choices[s]);
            if !state.contains(s, &partner) {
                return Err(violation!(
                    "unshifted edge {} of F_{} lacks its partner {}",
                    ground.edge_label(&choices[s], " "),
                    s + 1,
                    ground.edge_label(&partner, " ")
                ));
            }
            choices[s] = partner;
        }
        choices[i] = preimage;
    }
    let out = RainbowMatching::new(choices);
    out.validate(original).map_err(|e| violation!("pulled-back matching is invalid: {e}"))?;
    Ok(out)
}

/// The complement of `h` is closed upward in the shifting order.
pub fn complement_is_upward_closed(h: &Hypergraph) -> bool {
    let ground = h.ground();
    ground
        .universe()
        .iter()
        .filter(|e| !h.contains(e))
        .all(|e| upper_covers(ground, e).iter().all(|u| !h.contains(u)))
}

fn upper_covers(ground: &GroundSet, e: &Edge) -> Vec<Edge> {
    let s = e.as_slice();
    let n = ground.n() as u32;
    let mut out = Vec::new();
    for pos in 0..s.len() {
        if s[pos] + 1 >= n {
            continue;
        }
        if ground.kind() == GroundKind::General && pos + 1 < s.len() && s[pos + 1] == s[pos] + 1 {
            continue;
        }
        let mut up = e.clone();
        up.as_mut_slice()[pos] += 1;
        out.push(up);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{nu_exact, rainbow_exact};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bip(n: usize) -> GroundSet {
        GroundSet::partite(2, n).unwrap()
    }

    fn random_hypergraph(rng: &mut ChaCha8Rng, ground: GroundSet) -> Hypergraph {
        let universe = ground.universe();
        let size = rng.random_range(0..=universe.len());
        let picked = rand::seq::index::sample(rng, universe.len(), size);
        Hypergraph::from_edges(ground, picked.iter().map(|i| universe[i].clone())).unwrap()
    }

    #[test]
    fn shift_examples() {
        let g = bip(2);
        let h = Hypergraph::from_tuples(g, &[&[1, 0]]).unwrap();
        let (s, step) = shift_hypergraph(&h, 0, 0, 1).unwrap();
        assert_eq!(s.edges(), &[Edge::from([0, 0])]);
        assert_eq!(step.moved.len(), 1);

        let h = Hypergraph::from_tuples(g, &[&[0, 0], &[1, 0]]).unwrap();
        let (s, step) = shift_hypergraph(&h, 0, 0, 1).unwrap();
        assert_eq!(s, h);
        assert!(step.moved.is_empty());

        let star = Hypergraph::from_tuples(bip(3), &[&[0, 0], &[0, 1], &[0, 2]]).unwrap();
        for side in 0..2 {
            for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                let (s, step) = shift_hypergraph(&star, side, x, y).unwrap();
                assert_eq!(s, star);
                assert!(step.moved.is_empty());
            }
        }
    }

    #[test]
    fn shift_argument_errors() {
        let h = Hypergraph::empty(bip(3));
        assert!(shift_hypergraph(&h, 0, 1, 1).is_err());
        assert!(shift_hypergraph(&h, 0, 2, 1).is_err());
        assert!(shift_hypergraph(&h, 2, 0, 1).is_err());
        assert!(shift_hypergraph(&h, 0, 0, 3).is_err());
        let g = Hypergraph::empty(GroundSet::general(4, 2).unwrap());
        assert!(shift_hypergraph(&g, 1, 0, 1).is_err());
    }

    #[test]
    fn general_shift_keeps_edges_sorted() {
        let g = GroundSet::general(5, 2).unwrap();
        let h = Hypergraph::from_tuples(g, &[&[2, 4]]).unwrap();
        let (s, _) = shift_hypergraph(&h, 0, 0, 4).unwrap();
        assert_eq!(s.edges(), &[Edge::from([0, 2])]);
        // x already in the edge: untouched
        let h = Hypergraph::from_tuples(g, &[&[0, 4]]).unwrap();
        let (s, _) = shift_hypergraph(&h, 0, 0, 4).unwrap();
        assert_eq!(s, h);
    }

    #[test]
    fn is_shifted_examples() {
        let g = bip(2);
        assert!(is_shifted(&Hypergraph::from_tuples(g, &[&[0, 0]]).unwrap(), ShiftMode::Partite).unwrap());
        assert!(!is_shifted(&Hypergraph::from_tuples(g, &[&[1, 1]]).unwrap(), ShiftMode::Partite).unwrap());
        let star = Hypergraph::from_tuples(bip(4), &[&[0, 0], &[0, 1], &[0, 2], &[0, 3]]).unwrap();
        assert!(is_shifted(&star, ShiftMode::Partite).unwrap());
        assert!(is_shifted(&Hypergraph::empty(g), ShiftMode::Partite).unwrap());
        assert!(is_shifted(&Hypergraph::from_tuples(g, &[]).unwrap(), ShiftMode::Global).is_err());
        let k = GroundSet::general(5, 2).unwrap();
        assert!(is_shifted(&Hypergraph::from_tuples(k, &[&[0, 1], &[0, 2]]).unwrap(), ShiftMode::Global).unwrap());
        assert!(!is_shifted(&Hypergraph::from_tuples(k, &[&[0, 2]]).unwrap(), ShiftMode::Global).unwrap());
        assert!(is_shifted(&Hypergraph::from_tuples(k, &[&[0, 1]]).unwrap(), ShiftMode::Partite).is_err());
    }

    #[test]
    fn closure_examples() {
        let g = bip(2);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[1, 1]]).unwrap()]).unwrap();
        let (s, log) = shifted_closure(&f, ShiftMode::Partite).unwrap();
        assert_eq!(s.member(0).edges(), &[Edge::from([0, 0])]);
        assert_eq!(log.len(), 2);
        let (again, log2) = shifted_closure(&s, ShiftMode::Partite).unwrap();
        assert_eq!(again, s);
        assert!(log2.is_empty());
    }

    #[test]
    fn pullback_examples() {
        let g = bip(2);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[1, 0]]).unwrap()]).unwrap();
        let m = RainbowMatching::new(vec![Edge::from([1, 0])]);
        assert_eq!(pullback_rainbow(&ShiftLog::default(), &f, &m).unwrap(), m);

        let (s, log) = shifted_closure(&f, ShiftMode::Partite).unwrap();
        assert_eq!(log.len(), 1);
        let m = rainbow_exact(&s).unwrap();
        assert_eq!(m.choices, vec![Edge::from([0, 0])]);
        let back = pullback_rainbow(&log, &f, &m).unwrap();
        assert_eq!(back.choices, vec![Edge::from([1, 0])]);

        let bogus = RainbowMatching::new(vec![Edge::from([1, 1])]);
        assert!(matches!(pullback_rainbow(&log, &f, &bogus), Err(crate::Error::InvalidInput(_))));
    }

    #[test]
    fn pullback_swap_case() {
        // F_1 = {m2 w1}, F_2 = {m1 w2, m2 w2}: shifting m1<m2 moves F_1's edge
        // onto m1 while F_2 keeps m2w2 because m1w2 is present.
        let g = bip(2);
        let f = Family::new(vec![
            Hypergraph::from_tuples(g, &[&[1, 0]]).unwrap(),
            Hypergraph::from_tuples(g, &[&[0, 1], &[1, 1]]).unwrap(),
        ])
        .unwrap();
        let (s, step) = shift_family(&f, 0, 0, 1).unwrap();
        let log = ShiftLog { steps: vec![step] };
        let m = RainbowMatching::new(vec![Edge::from([0, 0]), Edge::from([1, 1])]);
        m.validate(&s).unwrap();
        let back = pullback_rainbow(&log, &f, &m).unwrap();
        assert_eq!(back.choices, vec![Edge::from([1, 0]), Edge::from([0, 1])]);
    }

    #[test]
    fn shifting_never_increases_nu_on_two_by_two() {
        let g = bip(2);
        let universe = g.universe();
        for mask in 0u32..16 {
            let h = Hypergraph::from_edges(g, (0..4).filter(|i| mask >> i & 1 == 1).map(|i| universe[i].clone()))
                .unwrap();
            for side in 0..2 {
                let (s, _) = shift_hypergraph(&h, side, 0, 1).unwrap();
                assert_eq!(s.len(), h.len());
                assert!(nu_exact(&s) <= nu_exact(&h));
            }
        }
    }

    #[test]
    fn complement_equivalence_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ground in [bip(3), GroundSet::partite(3, 2).unwrap(), GroundSet::general(5, 2).unwrap()] {
            let mode = ShiftMode::for_ground(&ground);
            for _ in 0..200 {
                let h = random_hypergraph(&mut rng, ground);
                assert_eq!(is_shifted(&h, mode).unwrap(), complement_is_upward_closed(&h));
                let f = Family::new(vec![h]).unwrap();
                let (s, _) = shifted_closure(&f, mode).unwrap();
                assert!(is_shifted(s.member(0), mode).unwrap());
                assert!(complement_is_upward_closed(s.member(0)));
            }
        }
    }

    #[test]
    fn replay_reproduces_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for ground in [bip(3), GroundSet::general(6, 2).unwrap(), GroundSet::partite(3, 3).unwrap()] {
            for _ in 0..50 {
                let f = Family::new((0..3).map(|_| random_hypergraph(&mut rng, ground)).collect()).unwrap();
                let (s, log) = shifted_closure(&f, ShiftMode::for_ground(&ground)).unwrap();
                assert_eq!(replay(&log, &f).unwrap(), s);
                assert_eq!(s.sizes(), f.sizes());
                let potential: u64 = f.members().iter().map(Hypergraph::index_potential).sum();
                let after: u64 = s.members().iter().map(Hypergraph::index_potential).sum();
                assert!(after + log.moves() as u64 <= potential);
            }
        }
    }

    #[test]
    fn replay_rejects_foreign_log() {
        let g = bip(2);
        let f = Family::new(vec![Hypergraph::from_tuples(g, &[&[1, 0]]).unwrap()]).unwrap();
        let (_, log) = shifted_closure(&f, ShiftMode::Partite).unwrap();
        let other = Family::new(vec![Hypergraph::from_tuples(g, &[&[0, 0]]).unwrap()]).unwrap();
        assert!(replay(&log, &other).is_err());
    }
}
