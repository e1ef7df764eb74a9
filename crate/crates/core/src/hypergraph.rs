//! Hypergraphs, families of hypergraphs and rainbow matchings.

use fixedbitset::FixedBitSet;

use crate::error::{invalid, Result};
use crate::ground::{Edge, GroundSet, Vertex};

/// An edge set over a ground set.
///
/// Membership is a dense bitmap over the edge universe; the edge list is kept
/// in lexicographic order for iteration.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    ground: GroundSet,
    cells: FixedBitSet,
    edges: Vec<Edge>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.cells == other.cells
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    pub fn empty(ground: GroundSet) -> Self {
        Hypergraph { ground, cells: FixedBitSet::with_capacity(ground.universe_size()), edges: Vec::new() }
    }

    /// Every edge of the universe.
    pub fn complete(ground: GroundSet) -> Self {
        let mut cells = FixedBitSet::with_capacity(ground.universe_size());
        cells.insert_range(..);
        Hypergraph { ground, cells, edges: ground.universe() }
    }

    /// Builds a hypergraph, rejecting invalid and duplicate edges.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(ground: GroundSet, edges: I) -> Result<Self> {
        let mut cells = FixedBitSet::with_capacity(ground.universe_size());
        let mut list = Vec::new();
        for e in edges {
            ground.check_edge(&e)?;
            let rank = ground.edge_rank(&e);
            if cells.put(rank) {
                return Err(invalid!("duplicate edge {:?}", e.one_based()));
            }
            list.push(e);
        }
        list.sort_unstable();
        Ok(Hypergraph { ground, cells, edges: list })
    }

    /// Convenience constructor from raw 0-based index tuples.
    pub fn from_tuples(ground: GroundSet, tuples: &[&[u32]]) -> Result<Self> {
        Self::from_edges(ground, tuples.iter().map(|t| Edge::from_slice(t)))
    }

    /// Builds from a membership bitmap over the universe ranks.
    pub(crate) fn from_cells(ground: GroundSet, cells: FixedBitSet, universe: &[Edge]) -> Self {
        let edges = cells.ones().map(|i| universe[i].clone()).collect();
        Hypergraph { ground, cells, edges }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub(crate) fn cells(&self) -> &FixedBitSet {
        &self.cells
    }

    /// Membership test; edges invalid for the ground set are never members.
    pub fn contains(&self, e: &Edge) -> bool {
        self.ground.check_edge(e).is_ok() && self.cells.contains(self.ground.edge_rank(e))
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.ground.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| self.ground.contains_vertex(e, v)).count())
    }

    /// Degrees of every vertex, indexed by `GroundSet::vertex_id`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.ground.vertex_count()];
        for e in &self.edges {
            for id in self.ground.vertex_ids(e) {
                deg[id] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Edges containing `v`, in lexicographic order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| self.ground.contains_vertex(e, v))
    }

    /// Sum of all vertex indices over all edges; strictly decreases under
    /// every effective shift.
    pub fn index_potential(&self) -> u64 {
        self.edges.iter().flat_map(|e| e.as_slice().iter()).map(|&v| u64::from(v)).sum()
    }
}

/// An ordered sequence of `k >= 1` hypergraphs over one ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    ground: GroundSet,
    members: Vec<Hypergraph>,
}

impl Family {
    pub fn new(members: Vec<Hypergraph>) -> Result<Self> {
        let ground = match members.first() {
            Some(h) => *h.ground(),
            None => return Err(invalid!("a family needs at least one member")),
        };
        if let Some(i) = members.iter().position(|h| *h.ground() != ground) {
            return Err(invalid!("member {} lives on {} but member 1 on {}", i + 1, members[i].ground(), ground));
        }
        Ok(Family { ground, members })
    }

    /// `k` copies of one hypergraph.
    pub fn repeated(h: Hypergraph, k: usize) -> Result<Self> {
        Self::new(vec![h; k])
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Hypergraph] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Hypergraph {
        &self.members[i]
    }

    pub fn into_members(self) -> Vec<Hypergraph> {
        self.members
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Hypergraph::len).collect()
    }

    /// Member indices sorted ascending by size, ties by original index.
    pub fn order_by_size(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.k()).collect();
        order.sort_by_key(|&i| self.members[i].len());
        order
    }

    /// The family with members rearranged so that position `t` holds the
    /// original member `order[t]`.
    pub fn permuted(&self, order: &[usize]) -> Family {
        Family { ground: self.ground, members: order.iter().map(|&i| self.members[i].clone()).collect() }
    }
}

/// One edge per family member, pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RainbowMatching {
    pub choices: Vec<Edge>,
}

impl RainbowMatching {
    pub fn new(choices: Vec<Edge>) -> Self {
        RainbowMatching { choices }
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// Checks that `choices[i] ∈ members[i]` and that the choices are
    /// pairwise disjoint.
    pub fn validate(&self, family: &Family) -> Result<()> {
        if self.choices.len() != family.k() {
            return Err(invalid!("matching has {} edges for a family of {} members", self.choices.len(), family.k()));
        }
        let ground = family.ground();
        for (i, e) in self.choices.iter().enumerate() {
            ground.check_edge(e)?;
            if !family.member(i).contains(e) {
                return Err(invalid!("edge {} is not in F_{}", ground.edge_label(e, " "), i + 1));
            }
        }
        for i in 0..self.choices.len() {
            for j in i + 1..self.choices.len() {
                if !ground.disjoint(&self.choices[i], &self.choices[j]) {
                    return Err(invalid!(
                        "edges {} (F_{}) and {} (F_{}) intersect",
                        ground.edge_label(&self.choices[i], " "),
                        i + 1,
                        ground.edge_label(&self.choices[j], " "),
                        j + 1
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid_for(&self, family: &Family) -> bool {
        self.validate(family).is_ok()
    }

    /// Maps a matching of `family.permuted(order)` back to original order.
    pub fn unpermute(&self, order: &[usize]) -> RainbowMatching {
        let mut choices = vec![Edge::new([]); order.len()];
        for (pos, &orig) in order.iter().enumerate() {
            choices[orig] = self.choices[pos].clone();
        }
        RainbowMatching { choices }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bip(n: usize) -> GroundSet {
        GroundSet::partite(2, n).unwrap()
    }

    #[test]
    fn degree_examples() {
        let h = Hypergraph::from_tuples(bip(2), &[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(h.degree(Vertex::new(0, 0)).unwrap(), 2);
        assert_eq!(Hypergraph::empty(bip(2)).degree(Vertex::new(1, 1)).unwrap(), 0);
        assert_eq!(Hypergraph::complete(bip(3)).degree(Vertex::new(1, 1)).unwrap(), 3);
        assert!(h.degree(Vertex::new(0, 2)).is_err());
        assert!(h.degree(Vertex::new(2, 0)).is_err());
    }

    #[test]
    fn duplicate_and_invalid_edges_rejected() {
        assert!(Hypergraph::from_tuples(bip(2), &[&[0, 0], &[0, 0]]).is_err());
        assert!(Hypergraph::from_tuples(bip(2), &[&[0, 2]]).is_err());
    }

    #[test]
    fn family_requires_shared_ground() {
        assert!(Family::new(vec![]).is_err());
        assert!(Family::new(vec![Hypergraph::empty(bip(2)), Hypergraph::empty(bip(3))]).is_err());
    }

    #[test]
    fn order_by_size_is_stable() {
        let a = Hypergraph::from_tuples(bip(2), &[&[0, 0], &[0, 1]]).unwrap();
        let b = Hypergraph::from_tuples(bip(2), &[&[0, 0]]).unwrap();
        let f = Family::new(vec![a.clone(), b, a]).unwrap();
        assert_eq!(f.order_by_size(), vec![1, 0, 2]);
    }

    #[test]
    fn validate_matching() {
        let g = bip(2);
        let f = Family::new(vec![
            Hypergraph::from_tuples(g, &[&[0, 0]]).unwrap(),
            Hypergraph::from_tuples(g, &[&[1, 1], &[0, 1]]).unwrap(),
        ])
        .unwrap();
        assert!(RainbowMatching::new(vec![Edge::from([0, 0]), Edge::from([1, 1])]).is_valid_for(&f));
        assert!(!RainbowMatching::new(vec![Edge::from([0, 0]), Edge::from([0, 1])]).is_valid_for(&f));
        assert!(!RainbowMatching::new(vec![Edge::from([1, 1]), Edge::from([0, 0])]).is_valid_for(&f));
    }
}
