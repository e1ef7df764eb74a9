//! Exact brute-force oracles: matching tests, the matching number and
//! rainbow-matching search, plus the cyclic perfect-matching decomposition
//! of `[n]^r`.

use crate::error::{invalid, Result};
use crate::ground::{Edge, GroundKind, GroundSet};
use crate::hypergraph::{Family, Hypergraph, RainbowMatching};

/// True iff the edges are pairwise vertex-disjoint.
pub fn is_matching(ground: &GroundSet, edges: &[Edge]) -> Result<bool> {
    for e in edges {
        ground.check_edge(e)?;
    }
    Ok(edges
        .iter()
        .enumerate()
        .all(|(i, e)| edges[i + 1..].iter().all(|f| ground.disjoint(e, f))))
}

/// Vertex ids of every edge, grouped by the edge's first coordinate (the
/// side-0 vertex for partite, the minimum vertex for general).
fn group_by_first(h: &Hypergraph) -> Vec<Vec<Vec<usize>>> {
    let ground = h.ground();
    let mut groups = vec![Vec::new(); ground.n()];
    for e in h.edges() {
        groups[e.get(0)].push(ground.vertex_ids(e).collect());
    }
    groups
}

struct NuSearch<'a> {
    ground: &'a GroundSet,
    groups: Vec<Vec<Vec<usize>>>,
    blocked: Vec<bool>,
    free: Vec<usize>,
    best: usize,
    target: usize,
}

impl NuSearch<'_> {
    fn bound(&self, current: usize) -> usize {
        match self.ground.kind() {
            GroundKind::Partite => current + self.free.iter().copied().min().unwrap_or(0),
            GroundKind::General => current + self.free[0] / self.ground.r(),
        }
    }

    fn set(&mut self, id: usize, blocked: bool) {
        self.blocked[id] = blocked;
        let side = id / self.ground.n();
        if blocked {
            self.free[side] -= 1;
        } else {
            self.free[side] += 1;
        }
    }

    fn search(&mut self, start: usize, current: usize) {
        if current > self.best {
            self.best = current;
        }
        if self.best >= self.target {
            return;
        }
        let Some(v) = (start..self.ground.n()).find(|&v| !self.blocked[v]) else {
            return;
        };
        if self.bound(current) <= self.best {
            return;
        }
        for idx in 0..self.groups[v].len() {
            if self.groups[v][idx].iter().any(|&id| self.blocked[id]) {
                continue;
            }
            let ids = self.groups[v][idx].clone();
            for &id in &ids {
                self.set(id, true);
            }
            self.search(v + 1, current + 1);
            for &id in &ids {
                self.set(id, false);
            }
            if self.best >= self.target {
                return;
            }
        }
        // leave v unmatched
        self.set(v, true);
        self.search(v + 1, current);
        self.set(v, false);
    }
}

fn nu_search(h: &Hypergraph, target: usize) -> usize {
    let ground = h.ground();
    let mut search = NuSearch {
        ground,
        groups: group_by_first(h),
        blocked: vec![false; ground.vertex_count()],
        free: vec![ground.n(); ground.sides()],
        best: 0,
        target,
    };
    search.search(0, 0);
    search.best
}

/// The matching number `ν(H)`, by branch and bound on the least unresolved
/// vertex (side 0 in the partite case).
pub fn nu_exact(h: &Hypergraph) -> usize {
    nu_search(h, usize::MAX)
}

/// `ν(H) >= k`, stopping as soon as a matching of size `k` is found.
pub fn nu_at_least(h: &Hypergraph, k: usize) -> bool {
    k == 0 || nu_search(h, k) >= k
}

struct RainbowSearch<'a> {
    lists: Vec<Vec<(&'a Edge, Vec<usize>)>>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
}

impl RainbowSearch<'_> {
    fn available(&self, pos: usize, idx: usize) -> bool {
        self.lists[pos][idx].1.iter().all(|&id| !self.covered[id])
    }

    fn later_members_alive(&self, from: usize) -> bool {
        (from..self.lists.len()).all(|pos| (0..self.lists[pos].len()).any(|idx| self.available(pos, idx)))
    }

    fn search(&mut self, pos: usize) -> bool {
        if pos == self.lists.len() {
            return true;
        }
        for idx in 0..self.lists[pos].len() {
            if !self.available(pos, idx) {
                continue;
            }
            for j in 0..self.lists[pos][idx].1.len() {
                let id = self.lists[pos][idx].1[j];
                self.covered[id] = true;
            }
            self.chosen.push(idx);
            if self.later_members_alive(pos + 1) && self.search(pos + 1) {
                return true;
            }
            self.chosen.pop();
            for j in 0..self.lists[pos][idx].1.len() {
                let id = self.lists[pos][idx].1[j];
                self.covered[id] = false;
            }
        }
        false
    }
}

/// Exhaustive rainbow-matching search.
///
/// Members are visited in ascending order of size (ties by index) and each
/// member's edges lexicographically, so the result is deterministic. The
/// returned matching is in the family's original member order.
pub fn rainbow_exact(family: &Family) -> Option<RainbowMatching> {
    let ground = family.ground();
    let order = family.order_by_size();
    let lists: Vec<Vec<(&Edge, Vec<usize>)>> = order
        .iter()
        .map(|&i| family.member(i).edges().iter().map(|e| (e, ground.vertex_ids(e).collect())).collect())
        .collect();
    let mut search = RainbowSearch { lists, covered: vec![false; ground.vertex_count()], chosen: Vec::new() };
    if !search.later_members_alive(0) || !search.search(0) {
        return None;
    }
    let in_order = RainbowMatching::new(
        search.chosen.iter().enumerate().map(|(pos, &idx)| search.lists[pos][idx].0.clone()).collect(),
    );
    Some(in_order.unpermute(&order))
}

/// Decomposes `[n]^r` into `n^(r-1)` pairwise disjoint perfect matchings.
///
/// The matching for offsets `(c_2, ..., c_r)` (taken in lexicographic order)
/// consists of the edges `(i, i + c_2, ..., i + c_r) mod n`.
pub fn pm_decomposition(n: usize, r: usize) -> Result<Vec<Hypergraph>> {
    let ground = GroundSet::partite(r, n)?;
    let offsets = if r == 1 {
        vec![Vec::new()]
    } else {
        GroundSet::partite(r - 1, n)
            .map_err(|e| invalid!("offset space: {e}"))?
            .universe()
            .into_iter()
            .map(|e| e.as_slice().to_vec())
            .collect()
    };
    offsets
        .into_iter()
        .map(|c| {
            let edges = (0..n as u32).map(|i| {
                Edge::new(std::iter::once(i).chain(c.iter().map(|&ci| (i + ci) % n as u32)))
            });
            Hypergraph::from_edges(ground, edges)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;

    fn bip(n: usize) -> GroundSet {
        GroundSet::partite(2, n).unwrap()
    }

    /// Tries every subset of edges.
    fn nu_naive(h: &Hypergraph) -> usize {
        let edges = h.edges();
        let g = h.ground();
        (0u32..1 << edges.len())
            .filter_map(|mask| {
                let chosen: Vec<Edge> =
                    (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i].clone()).collect();
                is_matching(g, &chosen).unwrap().then_some(chosen.len())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matching_examples() {
        let g = bip(2);
        assert!(is_matching(&g, &[Edge::from([0, 0]), Edge::from([1, 1])]).unwrap());
        assert!(!is_matching(&g, &[Edge::from([0, 0]), Edge::from([0, 1])]).unwrap());
        assert!(is_matching(&g, &[]).unwrap());
        assert!(is_matching(&g, &[Edge::from([0, 0, 0])]).is_err());
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_exact(&Hypergraph::empty(bip(3))), 0);
        assert_eq!(nu_exact(&Hypergraph::complete(bip(3))), 3);
        let star = Hypergraph::from_tuples(bip(3), &[&[0, 0], &[0, 1], &[0, 2]]).unwrap();
        assert_eq!(nu_exact(&star), 1);
        assert_eq!(nu_exact(&Hypergraph::complete(GroundSet::general(7, 2).unwrap())), 3);
        assert_eq!(nu_exact(&Hypergraph::complete(GroundSet::partite(3, 3).unwrap())), 3);
        assert!(nu_at_least(&Hypergraph::complete(bip(4)), 4));
        assert!(!nu_at_least(&star, 2));
    }

    #[test]
    fn nu_matches_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let grounds = [
            bip(3),
            bip(4),
            GroundSet::partite(3, 2).unwrap(),
            GroundSet::partite(3, 3).unwrap(),
            GroundSet::general(6, 2).unwrap(),
            GroundSet::general(6, 3).unwrap(),
        ];
        for trial in 0..600 {
            let g = grounds[trial % grounds.len()];
            let universe = g.universe();
            let size = rng.random_range(0..=12.min(universe.len()));
            let picked = rand::seq::index::sample(&mut rng, universe.len(), size);
            let h = Hypergraph::from_edges(g, picked.iter().map(|i| universe[i].clone())).unwrap();
            assert_eq!(nu_exact(&h), nu_naive(&h), "{g} {:?}", h.edges());
        }
    }

    #[test]
    fn rainbow_examples() {
        let g = bip(2);
        let f = Family::new(vec![
            Hypergraph::from_tuples(g, &[&[0, 0]]).unwrap(),
            Hypergraph::from_tuples(g, &[&[1, 1]]).unwrap(),
        ])
        .unwrap();
        let m = rainbow_exact(&f).unwrap();
        assert_eq!(m.choices, vec![Edge::from([0, 0]), Edge::from([1, 1])]);

        let f = Family::new(vec![
            Hypergraph::from_tuples(g, &[&[0, 0]]).unwrap(),
            Hypergraph::from_tuples(g, &[&[0, 1], &[1, 0]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(rainbow_exact(&f), None);

        let f = Family::new(vec![Hypergraph::empty(g)]).unwrap();
        assert_eq!(rainbow_exact(&f), None);
    }

    #[test]
    fn rainbow_result_in_original_order() {
        let g = bip(3);
        let big = Hypergraph::complete(g);
        let small = Hypergraph::from_tuples(g, &[&[2, 2]]).unwrap();
        let f = Family::new(vec![big, small]).unwrap();
        let m = rainbow_exact(&f).unwrap();
        m.validate(&f).unwrap();
        assert_eq!(m.choices[1], Edge::from([2, 2]));
    }

    #[test]
    fn pm_decomposition_examples() {
        let d = pm_decomposition(2, 2).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].edges(), &[Edge::from([0, 0]), Edge::from([1, 1])]);
        assert_eq!(d[1].edges(), &[Edge::from([0, 1]), Edge::from([1, 0])]);
        assert_eq!(pm_decomposition(3, 2).unwrap().len(), 3);
        assert_eq!(pm_decomposition(4, 1).unwrap().len(), 1);
    }

    #[test]
    fn pm_decomposition_partitions_universe() {
        for (n, r) in [(2, 3), (3, 2), (3, 3), (4, 2), (2, 4)] {
            let ground = GroundSet::partite(r, n).unwrap();
            let parts = pm_decomposition(n, r).unwrap();
            assert_eq!(parts.len(), n.pow(r as u32 - 1));
            let mut seen = vec![0; ground.universe_size()];
            for m in &parts {
                assert_eq!(m.len(), n);
                assert!(is_matching(&ground, m.edges()).unwrap());
                for e in m.edges() {
                    seen[ground.edge_rank(e)] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "n={n} r={r}");
        }
    }
}
