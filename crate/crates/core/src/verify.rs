//! Exhaustive and randomized verification.
//!
//! Exhaustive checks over rainbow-matching statements restrict to shifted
//! families: if some family violates a statement whose hypothesis only
//! constrains member sizes, its shifted closure (same sizes) violates it too,
//! because a rainbow matching of the closure pulls back.
//!
//! Random searches use one ChaCha stream per trial (`seed`, stream = trial
//! index), so reports do not depend on the number of worker threads.

use std::time::Instant;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::extremal::{f_r2, g_formula};
use crate::format::Instance;
use crate::ground::{binomial, GroundSet};
use crate::hypergraph::{Family, Hypergraph};
use crate::oracle::{nu_at_least, rainbow_exact};
use crate::shifting::{shifted_closure, ShiftMode};
use crate::solvers::{large_n_procedure, DegreeMatrix, Outcome};

/// Largest edge universe enumerated for shifted (downward-closed) families.
pub const MAX_EXHAUSTIVE_UNIVERSE: usize = 16;
/// Largest edge universe enumerated for arbitrary edge sets.
pub const MAX_RAW_UNIVERSE: usize = 9;
/// Largest number of families an exhaustive check may visit.
pub const MAX_EXHAUSTIVE_INSTANCES: u64 = 20_000_000;
/// Largest `k` for the permutation search over degree matrices.
pub const MAX_MATRIX_K: usize = 10;
/// Counterexamples kept verbatim in a report; all are counted.
pub const MAX_STORED_COUNTEREXAMPLES: usize = 16;
/// Attempts to draw one hypothesis-satisfying family before giving up.
pub const MAX_SAMPLE_ATTEMPTS: usize = 10_000;

fn refuse_universe(ground: &GroundSet, limit: usize) -> Result<()> {
    let u = ground.universe_size();
    if u > limit {
        return Err(Error::Refused(format!(
            "edge universe of {ground} has {u} edges, exhaustive limit is {limit} (up to 2^{u} edge sets)"
        )));
    }
    Ok(())
}

fn downsets(ground: &GroundSet, size: Option<usize>) -> Vec<FixedBitSet> {
    struct Walk<'a> {
        lowers: &'a [Vec<usize>],
        target: Option<usize>,
        current: FixedBitSet,
        out: Vec<FixedBitSet>,
    }
    impl Walk<'_> {
        fn go(&mut self, pos: usize, count: usize) {
            let total = self.lowers.len();
            if let Some(t) = self.target {
                if count > t || count + (total - pos) < t {
                    return;
                }
            }
            if pos == total {
                self.out.push(self.current.clone());
                return;
            }
            if self.target != Some(count) && self.lowers[pos].iter().all(|&l| self.current.contains(l)) {
                self.current.insert(pos);
                self.go(pos + 1, count + 1);
                self.current.set(pos, false);
            }
            self.go(pos + 1, count);
        }
    }
    let universe = ground.universe();
    let lowers: Vec<Vec<usize>> =
        universe.iter().map(|e| ground.lower_covers(e).iter().map(|l| ground.edge_rank(l)).collect()).collect();
    let mut walk = Walk { lowers: &lowers, target: size, current: FixedBitSet::with_capacity(universe.len()), out: Vec::new() };
    walk.go(0, 0);
    walk.out
}

/// Every downward-closed edge set of exactly `size` edges, each once.
///
/// Edges are decided in lexicographic order, a linear extension of the
/// shifting order; an edge may be included only when all of its lower covers
/// are.
pub fn enumerate_shifted(ground: &GroundSet, size: usize) -> Result<impl Iterator<Item = Hypergraph>> {
    refuse_universe(ground, MAX_EXHAUSTIVE_UNIVERSE)?;
    let universe = ground.universe();
    let g = *ground;
    Ok(downsets(ground, Some(size)).into_iter().map(move |cells| Hypergraph::from_cells(g, cells, &universe)))
}

/// Every downward-closed edge set, ordered by size then lexicographically
/// by membership pattern.
pub fn enumerate_all_shifted(ground: &GroundSet) -> Result<Vec<Hypergraph>> {
    refuse_universe(ground, MAX_EXHAUSTIVE_UNIVERSE)?;
    let universe = ground.universe();
    let mut all: Vec<Hypergraph> =
        downsets(ground, None).into_iter().map(|cells| Hypergraph::from_cells(*ground, cells, &universe)).collect();
    all.sort_by_key(Hypergraph::len);
    Ok(all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactThresholdMode {
    /// `f(n, 2, k)` over subgraphs of `K_n`.
    FR2General,
    /// `g(n, r, k)` over `[n]^r`.
    GPartite,
}

/// Largest `|H|` with `ν(H) < k` over shifted `H` on `ground`.
pub fn exact_threshold(ground: &GroundSet, k: usize) -> Result<u64> {
    refuse_universe(ground, MAX_EXHAUSTIVE_UNIVERSE)?;
    let universe = ground.universe();
    let best = downsets(ground, None)
        .into_par_iter()
        .filter(|cells| !nu_at_least(&Hypergraph::from_cells(*ground, cells.clone(), &universe), k))
        .map(|cells| cells.count_ones(..))
        .max();
    Ok(best.unwrap_or(0) as u64)
}

/// Exact `f(n, 2, k)` or `g(n, r, k)` by enumeration of shifted hypergraphs.
pub fn compute_threshold_exact(mode: ExactThresholdMode, n: usize, r: usize, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(invalid!("k must be at least 1"));
    }
    let ground = match mode {
        ExactThresholdMode::FR2General => {
            if r != 2 {
                return Err(invalid!("f_r2_general needs r = 2 (got r={r})"));
            }
            GroundSet::general(n, 2)?
        }
        ExactThresholdMode::GPartite => GroundSet::partite(r, n)?,
    };
    exact_threshold(&ground, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureId {
    /// Members of `C([n], r)` larger than `f(n, r, k)`.
    RainbowGeneral,
    /// Members of `[n]^r` larger than `(k-1) n^(r-1)`.
    SizeCondition,
    /// Bipartite members with maximum degree `<= d` and more than `(k-1)d` edges.
    DegreeCondition,
    /// Bipartite members whose `i`-th smallest has at least `i·n` edges.
    Simple,
    /// Degree-matrix permutation statement under the Hall-type size condition.
    Matrix,
}

impl ConjectureId {
    pub fn all() -> [ConjectureId; 5] {
        [
            ConjectureId::RainbowGeneral,
            ConjectureId::SizeCondition,
            ConjectureId::DegreeCondition,
            ConjectureId::Simple,
            ConjectureId::Matrix,
        ]
    }

    /// Whether the statement reduces to shifted families.
    pub fn shift_reducible(self) -> bool {
        matches!(self, ConjectureId::RainbowGeneral | ConjectureId::SizeCondition | ConjectureId::Simple)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConjectureId::RainbowGeneral => "rainbow_general",
            ConjectureId::SizeCondition => "size_condition",
            ConjectureId::DegreeCondition => "degree_condition",
            ConjectureId::Simple => "simple",
            ConjectureId::Matrix => "matrix",
        }
    }
}

impl std::str::FromStr for ConjectureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConjectureId::all()
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid!("unknown conjecture {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureParams {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportMode {
    /// Every shifted family meeting the hypothesis.
    ExhaustiveShifted,
    /// Every family (shifted or not) meeting the hypothesis.
    ExhaustiveRaw,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub conjecture: ConjectureId,
    pub params: ConjectureParams,
    pub mode: ReportMode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub instances_checked: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Instance>,
    /// Random mode: index of the first trial that produced a counterexample.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_counterexample_trial: Option<u64>,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    /// Equality on everything but the wall-clock time.
    pub fn same_outcome(&self, other: &VerifyReport) -> bool {
        VerifyReport { elapsed_ms: 0, ..self.clone() } == VerifyReport { elapsed_ms: 0, ..other.clone() }
    }
}

/// A conjecture bound to concrete parameters.
#[derive(Clone, Debug)]
pub struct Conjecture {
    pub id: ConjectureId,
    pub params: ConjectureParams,
    ground: GroundSet,
    /// Per-member strict lower bound on size, where the hypothesis has one.
    size_floor: Option<u64>,
}

impl Conjecture {
    pub fn new(id: ConjectureId, params: ConjectureParams) -> Result<Self> {
        let ConjectureParams { n, r, k, d } = params;
        if k == 0 {
            return Err(invalid!("k must be at least 1"));
        }
        let bipartite = || -> Result<GroundSet> {
            if r != 2 {
                return Err(invalid!("{} is stated for bipartite graphs (r = 2), got r={r}", id.name()));
            }
            GroundSet::partite(2, n)
        };
        let (ground, size_floor) = match id {
            ConjectureId::RainbowGeneral => {
                if 2 * r > n {
                    return Err(invalid!("rainbow_general needs r <= n/2 (got r={r}, n={n})"));
                }
                let ground = GroundSet::general(n, r)?;
                let f = if r == 2 { f_r2(n, k)? } else { exact_threshold(&ground, k)? };
                (ground, Some(f))
            }
            ConjectureId::SizeCondition => (GroundSet::partite(r, n)?, Some(g_formula(n, r, k))),
            ConjectureId::DegreeCondition => {
                let d = d.ok_or_else(|| invalid!("degree_condition needs the degree bound d"))?;
                if d == 0 {
                    return Err(invalid!("d must be at least 1"));
                }
                (bipartite()?, Some(((k - 1) * d) as u64))
            }
            ConjectureId::Simple => (bipartite()?, None),
            ConjectureId::Matrix => {
                let g = bipartite()?;
                if k > n {
                    return Err(invalid!("matrix conjecture needs k <= n (got k={k}, n={n})"));
                }
                (g, None)
            }
        };
        Ok(Conjecture { id, params, ground, size_floor })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn member_ok(&self, h: &Hypergraph) -> bool {
        if self.size_floor.is_some_and(|floor| h.len() as u64 <= floor) {
            return false;
        }
        match self.id {
            ConjectureId::DegreeCondition => h.max_degree() <= self.params.d.unwrap_or(0),
            ConjectureId::Simple => h.len() >= self.ground.n(),
            _ => true,
        }
    }

    /// Whether `f` satisfies the statement's hypothesis.
    pub fn hypothesis(&self, f: &Family) -> bool {
        if *f.ground() != self.ground || f.k() != self.params.k || !f.members().iter().all(|h| self.member_ok(h)) {
            return false;
        }
        let n = self.ground.n();
        let mut sizes = f.sizes();
        sizes.sort_unstable();
        match self.id {
            ConjectureId::Simple => sizes.iter().enumerate().all(|(i, &s)| s >= (i + 1) * n),
            ConjectureId::Matrix => prefix_condition(&sizes, n),
            _ => true,
        }
    }

    /// Whether `f` satisfies the statement's conclusion.
    pub fn conclusion(&self, f: &Family) -> bool {
        match self.id {
            ConjectureId::Matrix => DegreeMatrix::from_family(f)
                .and_then(|m| check_matrix_conjecture(&m))
                .map(|c| c.permutation.is_some())
                .unwrap_or(false),
            _ => rainbow_exact(f).is_some(),
        }
    }

    pub fn is_counterexample(&self, f: &Family) -> bool {
        self.hypothesis(f) && !self.conclusion(f)
    }

    fn candidates(&self) -> Result<(ReportMode, Vec<Hypergraph>)> {
        if self.id.shift_reducible() {
            let all = enumerate_all_shifted(&self.ground)?;
            Ok((ReportMode::ExhaustiveShifted, all.into_iter().filter(|h| self.member_ok(h)).collect()))
        } else {
            refuse_universe(&self.ground, MAX_RAW_UNIVERSE)?;
            let universe = self.ground.universe();
            let u = universe.len();
            let all = (0u64..1 << u)
                .map(|mask| {
                    let mut cells = FixedBitSet::with_capacity(u);
                    (0..u).filter(|&i| mask >> i & 1 == 1).for_each(|i| cells.insert(i));
                    Hypergraph::from_cells(self.ground, cells, &universe)
                })
                .filter(|h| self.member_ok(h))
                .collect();
            Ok((ReportMode::ExhaustiveRaw, all))
        }
    }

    fn sample_member(&self, rng: &mut ChaCha8Rng, min_size: usize) -> Option<Hypergraph> {
        let universe = self.ground.universe();
        let u = universe.len();
        match self.id {
            ConjectureId::DegreeCondition => {
                let d = self.params.d.unwrap_or(0);
                let cap = self.ground.n() * d;
                if min_size > cap {
                    return None;
                }
                let target = rng.random_range(min_size..=cap);
                let mut order: Vec<usize> = (0..u).collect();
                order.shuffle(rng);
                let mut degrees = vec![0; self.ground.vertex_count()];
                let mut chosen = Vec::with_capacity(target);
                for i in order {
                    if chosen.len() == target {
                        break;
                    }
                    let ids: Vec<usize> = self.ground.vertex_ids(&universe[i]).collect();
                    if ids.iter().all(|&v| degrees[v] < d) {
                        ids.iter().for_each(|&v| degrees[v] += 1);
                        chosen.push(universe[i].clone());
                    }
                }
                (chosen.len() == target).then(|| Hypergraph::from_edges(self.ground, chosen).expect("distinct edges"))
            }
            _ => {
                if min_size > u {
                    return None;
                }
                let size = rng.random_range(min_size..=u);
                let picked = rand::seq::index::sample(rng, u, size);
                Some(Hypergraph::from_edges(self.ground, picked.iter().map(|i| universe[i].clone())).expect("distinct"))
            }
        }
    }

    /// Draws a family satisfying the hypothesis (shifted when reducible).
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Family> {
        let k = self.params.k;
        let n = self.ground.n();
        let floor = self.size_floor.map_or(0, |f| f as usize + 1);
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            let members: Option<Vec<Hypergraph>> = (0..k)
                .map(|i| {
                    let min = match self.id {
                        ConjectureId::Simple => (i + 1) * n,
                        ConjectureId::Matrix => 1,
                        _ => floor,
                    };
                    self.sample_member(rng, min)
                })
                .collect();
            let Some(members) = members else {
                return Err(invalid!("the hypothesis of {} cannot hold at {:?}", self.id.name(), self.params));
            };
            let family = Family::new(members)?;
            let family = if self.id.shift_reducible() {
                shifted_closure(&family, ShiftMode::for_ground(&self.ground))?.0
            } else {
                family
            };
            if self.hypothesis(&family) {
                return Ok(family);
            }
        }
        Err(invalid!("no family satisfying the hypothesis of {} found in {MAX_SAMPLE_ATTEMPTS} draws", self.id.name()))
    }
}

fn prefix_condition(sorted: &[usize], n: usize) -> bool {
    let mut sum = 0;
    sorted.iter().enumerate().all(|(j, &s)| {
        sum += s;
        sum > (j + 1) * j * n
    })
}

/// Visits every non-decreasing index tuple of length `k` over `0..count`
/// whose first index is `first`.
fn for_each_multiset(first: usize, count: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(tuple: &mut Vec<usize>, count: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
        if tuple.len() == k {
            visit(tuple);
            return;
        }
        let start = *tuple.last().expect("non-empty");
        for next in start..count {
            tuple.push(next);
            rec(tuple, count, k, visit);
            tuple.pop();
        }
    }
    let mut tuple = vec![first];
    rec(&mut tuple, count, k, visit);
}

fn multiset_count(count: usize, k: usize) -> u64 {
    binomial((count + k).saturating_sub(1) as u64, k as u64)
}

/// Exhaustive or random check of a conjecture at fixed parameters.
///
/// Exhaustive mode visits each multiset of `k` candidate members once
/// (member order does not affect either side of any of the statements).
/// Random mode draws `budget` families from `seed`.
pub fn check_conjecture(
    id: ConjectureId,
    params: ConjectureParams,
    mode: SearchMode,
    budget: u64,
    seed: u64,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let conj = Conjecture::new(id, params)?;
    let mut report = match mode {
        SearchMode::Exhaustive => exhaustive(&conj)?,
        SearchMode::Random => random(&conj, budget, seed)?,
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn exhaustive(conj: &Conjecture) -> Result<VerifyReport> {
    let (mode, candidates) = conj.candidates()?;
    let k = conj.params.k;
    let total = multiset_count(candidates.len(), k);
    if total > MAX_EXHAUSTIVE_INSTANCES {
        return Err(Error::Refused(format!(
            "{total} candidate families exceed the exhaustive limit {MAX_EXHAUSTIVE_INSTANCES}"
        )));
    }
    let shards: Vec<(u64, u64, Vec<Family>)> = (0..candidates.len())
        .into_par_iter()
        .map(|first| {
            let (mut checked, mut bad, mut kept) = (0u64, 0u64, Vec::new());
            for_each_multiset(first, candidates.len(), k, &mut |tuple| {
                let family = Family::new(tuple.iter().map(|&i| candidates[i].clone()).collect()).expect("shared ground");
                if !conj.hypothesis(&family) {
                    return;
                }
                checked += 1;
                if !conj.conclusion(&family) {
                    bad += 1;
                    if kept.len() < MAX_STORED_COUNTEREXAMPLES {
                        kept.push(family);
                    }
                }
            });
            (checked, bad, kept)
        })
        .collect();
    let mut report = empty_report(conj, mode, None);
    for (checked, bad, kept) in shards {
        report.instances_checked += checked;
        report.counterexample_count += bad;
        for f in kept {
            if report.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
                report.counterexamples.push(Instance::from_family(&f));
            }
        }
    }
    Ok(report)
}

/// The generator used for trial `trial` of a seeded search.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn random(conj: &Conjecture, trials: u64, seed: u64) -> Result<VerifyReport> {
    let results: Vec<Option<Family>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let family = conj.sample(&mut trial_rng(seed, t))?;
            Ok((!conj.conclusion(&family)).then_some(family))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = empty_report(conj, ReportMode::Random, Some(seed));
    report.instances_checked = trials;
    for (t, found) in results.into_iter().enumerate() {
        if let Some(f) = found {
            report.counterexample_count += 1;
            report.first_counterexample_trial.get_or_insert(t as u64);
            if report.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
                report.counterexamples.push(Instance::from_family(&f));
            }
        }
    }
    Ok(report)
}

fn empty_report(conj: &Conjecture, mode: ReportMode, seed: Option<u64>) -> VerifyReport {
    VerifyReport {
        conjecture: conj.id,
        params: conj.params,
        mode,
        seed,
        instances_checked: 0,
        counterexample_count: 0,
        counterexamples: Vec::new(),
        first_counterexample_trial: None,
        elapsed_ms: 0,
    }
}

/// Seeded sampling of hypothesis-satisfying families.
pub fn random_search(id: ConjectureId, params: ConjectureParams, trials: u64, seed: u64) -> Result<VerifyReport> {
    check_conjecture(id, params, SearchMode::Random, trials, seed)
}

/// Re-checks a stored counterexample.
pub fn revalidate(report: &VerifyReport, instance: &Instance) -> Result<bool> {
    let conj = Conjecture::new(report.conjecture, report.params)?;
    Ok(conj.is_counterexample(&instance.to_family()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixCheck {
    /// Prefix sums of the sorted row sums exceed `j(j-1)n`.
    pub hypothesis: bool,
    /// Row `i` takes column `permutation[i]`; the selected entries, sorted
    /// ascending, have every prefix sum above `j(j-1)`.
    pub permutation: Option<Vec<usize>>,
    /// A permutation whose sorted selected entries dominate `(1, 2, ..., k)`.
    pub weak_permutation: Option<Vec<usize>>,
}

/// Lexicographically first permutations for the strong and weak statements,
/// by brute force over the first `k` columns.
pub fn check_matrix_conjecture(a: &DegreeMatrix) -> Result<MatrixCheck> {
    let k = a.k;
    if k > MAX_MATRIX_K {
        return Err(Error::Refused(format!("k={k} exceeds the permutation search limit {MAX_MATRIX_K}")));
    }
    if a.n < k {
        return Err(invalid!("degree matrix needs at least k={k} columns, has {}", a.n));
    }
    let mut sums = a.row_sums();
    sums.sort_unstable();
    let hypothesis = prefix_condition(&sums, a.n);

    let mut perm: Vec<usize> = (0..k).collect();
    let (mut strong, mut weak) = (None, None);
    loop {
        let mut picked: Vec<usize> = (0..k).map(|i| a.get(i, perm[i])).collect();
        picked.sort_unstable();
        if strong.is_none() {
            let mut sum = 0;
            if picked.iter().enumerate().all(|(j, &v)| {
                sum += v;
                sum > (j + 1) * j
            }) {
                strong = Some(perm.clone());
            }
        }
        if weak.is_none() && picked.iter().enumerate().all(|(j, &v)| v > j) {
            weak = Some(perm.clone());
        }
        if (strong.is_some() && weak.is_some()) || !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(MatrixCheck { hypothesis, permutation: strong, weak_permutation: weak })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Success counts of [`large_n_procedure`] on one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub trials: u64,
    pub successes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub r: usize,
    pub k: usize,
    /// Smallest `n` from which every scanned `n` succeeded on every trial.
    pub empirical_n0: Option<usize>,
}

/// Runs the large-`n` procedure on random families above `(k-1)n^(r-1)`
/// for `n` in `k..=n_max`.
pub fn large_n_scan(
    rs: &[usize],
    ks: &[usize],
    n_max: usize,
    trials: u64,
    seed: u64,
) -> Result<(Vec<ScanPoint>, Vec<ScanSummary>)> {
    let mut points = Vec::new();
    let mut summaries = Vec::new();
    for &r in rs {
        for &k in ks {
            let mut rows = Vec::new();
            for n in k.max(2)..=n_max {
                let conj = Conjecture::new(ConjectureId::SizeCondition, ConjectureParams { n, r, k, d: None })?;
                let ground = *conj.ground();
                if ground.universe_size() as u64 <= g_formula(n, r, k) {
                    continue;
                }
                let successes: u64 = (0..trials)
                    .into_par_iter()
                    .map(|t| -> Result<u64> {
                        let mut rng = trial_rng(seed ^ ((r as u64) << 48 | (k as u64) << 32 | n as u64), t);
                        let members = (0..k)
                            .map(|_| conj.sample_member(&mut rng, g_formula(n, r, k) as usize + 1))
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| invalid!("cannot sample above the bound"))?;
                        let family = Family::new(members)?;
                        Ok(match large_n_procedure(&family)? {
                            Outcome::Found(m) => {
                                m.validate(&family)?;
                                1
                            }
                            Outcome::NotFound { .. } => 0,
                        })
                    })
                    .sum::<Result<u64>>()?;
                rows.push(ScanPoint { r, k, n, trials, successes });
            }
            let mut n0 = None;
            for row in rows.iter().rev() {
                if row.successes != row.trials {
                    break;
                }
                n0 = Some(row.n);
            }
            summaries.push(ScanSummary { r, k, empirical_n0: n0 });
            points.extend(rows);
        }
    }
    Ok((points, summaries))
}

/// Members of `[n]^r` or `C([n], r)` of a given kind with every edge set
/// size enumerated: how many shifted hypergraphs of each size exist.
pub fn shifted_size_profile(ground: &GroundSet) -> Result<Vec<usize>> {
    let mut counts = vec![0; ground.universe_size() + 1];
    for h in enumerate_all_shifted(ground)? {
        counts[h.len()] += 1;
    }
    Ok(counts)
}
