//! Vertex universes and edges.
//!
//! Two kinds of ground set are supported. A *partite* ground set is `[n]^r`:
//! `r` sides of `n` linearly ordered vertices, and an edge takes exactly one
//! vertex from every side. A *general* ground set is `[n]` and its edges are
//! the `r`-subsets, stored as strictly increasing index sequences.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{invalid, Result};

/// Largest edge universe a ground set may have. Hypergraphs keep a dense
/// membership bitmap over the universe.
pub const MAX_UNIVERSE: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroundKind {
    Partite,
    General,
}

impl fmt::Display for GroundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundKind::Partite => f.write_str("partite"),
            GroundKind::General => f.write_str("general"),
        }
    }
}

/// A vertex. In the general kind `side` is always 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub side: usize,
    pub index: usize,
}

impl Vertex {
    pub fn new(side: usize, index: usize) -> Self {
        Vertex { side, index }
    }
}

/// An edge: one index per side (partite) or a sorted `r`-subset (general).
///
/// The derived ordering is lexicographic on the index sequence, which is a
/// linear extension of the shifting order in both kinds.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(SmallVec<[u32; 4]>);

impl Edge {
    pub fn new<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        Edge(vertices.into_iter().collect())
    }

    pub fn from_slice(vertices: &[u32]) -> Self {
        Edge(SmallVec::from_slice(vertices))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, position: usize) -> usize {
        self.0[position] as usize
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [u32] {
        &mut self.0
    }

    /// The edge with 1 added to every index, as used by serialized forms.
    pub fn one_based(&self) -> Vec<u32> {
        self.0.iter().map(|&v| v + 1).collect()
    }
}

impl From<&[u32]> for Edge {
    fn from(v: &[u32]) -> Self {
        Edge::from_slice(v)
    }
}

impl<const N: usize> From<[u32; N]> for Edge {
    fn from(v: [u32; N]) -> Self {
        Edge::from_slice(&v)
    }
}

/// `n choose k`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    kind: GroundKind,
    r: usize,
    n: usize,
}

impl GroundSet {
    /// The complete `n`-balanced `r`-partite hypergraph `[n]^r`.
    pub fn partite(r: usize, n: usize) -> Result<Self> {
        Self::new(GroundKind::Partite, r, n)
    }

    /// The `r`-subsets of `[n]`.
    pub fn general(n: usize, r: usize) -> Result<Self> {
        Self::new(GroundKind::General, r, n)
    }

    pub fn new(kind: GroundKind, r: usize, n: usize) -> Result<Self> {
        if r == 0 {
            return Err(invalid!("uniformity r must be at least 1"));
        }
        if n == 0 {
            return Err(invalid!("n must be at least 1"));
        }
        if kind == GroundKind::General && r > n {
            return Err(invalid!("general ground set needs r <= n (got r={r}, n={n})"));
        }
        if n > u32::MAX as usize {
            return Err(invalid!("n={n} too large"));
        }
        let ground = GroundSet { kind, r, n };
        let size = match kind {
            GroundKind::Partite => (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX),
            GroundKind::General => u128::from(binomial(n as u64, r as u64)),
        };
        if size > MAX_UNIVERSE as u128 {
            return Err(invalid!(
                "edge universe of {kind} ground set with r={r}, n={n} has {size} cells, limit is {MAX_UNIVERSE}"
            ));
        }
        Ok(ground)
    }

    pub fn kind(&self) -> GroundKind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_partite(&self) -> bool {
        self.kind == GroundKind::Partite
    }

    /// Number of sides: `r` for partite, 1 for general.
    pub fn sides(&self) -> usize {
        match self.kind {
            GroundKind::Partite => self.r,
            GroundKind::General => 1,
        }
    }

    /// Size of the edge universe: `n^r` or `C(n, r)`.
    pub fn universe_size(&self) -> usize {
        match self.kind {
            GroundKind::Partite => self.n.pow(self.r as u32),
            GroundKind::General => binomial(self.n as u64, self.r as u64) as usize,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.sides() * self.n
    }

    /// Dense id of a vertex in `0..vertex_count()`.
    pub fn vertex_id(&self, v: Vertex) -> usize {
        v.side * self.n + v.index
    }

    pub fn vertex_from_id(&self, id: usize) -> Vertex {
        Vertex::new(id / self.n, id % self.n)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.side >= self.sides() {
            return Err(invalid!("side {} out of range for {} sides", v.side, self.sides()));
        }
        if v.index >= self.n {
            return Err(invalid!("vertex index {} out of range [0, {})", v.index, self.n));
        }
        Ok(())
    }

    pub fn check_edge(&self, e: &Edge) -> Result<()> {
        if e.len() != self.r {
            return Err(invalid!("edge {:?} has {} vertices, expected r={}", e.as_slice(), e.len(), self.r));
        }
        if let Some(&v) = e.as_slice().iter().find(|&&v| v as usize >= self.n) {
            return Err(invalid!("edge {:?} has vertex {} out of range [0, {})", e.as_slice(), v, self.n));
        }
        if self.kind == GroundKind::General && e.as_slice().windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid!("general edge {:?} is not strictly increasing", e.as_slice()));
        }
        Ok(())
    }

    pub fn contains_vertex(&self, e: &Edge, v: Vertex) -> bool {
        match self.kind {
            GroundKind::Partite => e.get(v.side) == v.index,
            GroundKind::General => e.as_slice().binary_search(&(v.index as u32)).is_ok(),
        }
    }

    /// The vertices of `e`, in side order (partite) or increasing order.
    pub fn vertices<'a>(&self, e: &'a Edge) -> impl Iterator<Item = Vertex> + 'a {
        let kind = self.kind;
        e.as_slice().iter().enumerate().map(move |(pos, &v)| match kind {
            GroundKind::Partite => Vertex::new(pos, v as usize),
            GroundKind::General => Vertex::new(0, v as usize),
        })
    }

    pub fn vertex_ids<'a>(&'a self, e: &'a Edge) -> impl Iterator<Item = usize> + 'a {
        self.vertices(e).map(move |v| self.vertex_id(v))
    }

    pub fn disjoint(&self, e: &Edge, f: &Edge) -> bool {
        match self.kind {
            GroundKind::Partite => e.as_slice().iter().zip(f.as_slice()).all(|(a, b)| a != b),
            GroundKind::General => {
                let (a, b) = (e.as_slice(), f.as_slice());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => return false,
                    }
                }
                true
            }
        }
    }

    /// Position of `e` in the lexicographic enumeration of the universe.
    /// `e` must be valid for this ground set.
    pub fn edge_rank(&self, e: &Edge) -> usize {
        match self.kind {
            GroundKind::Partite => e.as_slice().iter().fold(0, |acc, &v| acc * self.n + v as usize),
            GroundKind::General => {
                let (n, r) = (self.n as u64, self.r as u64);
                let mut rank = 0u64;
                let mut next = 0u64;
                for (i, &c) in e.as_slice().iter().enumerate() {
                    let c = u64::from(c);
                    for skipped in next..c {
                        rank += binomial(n - 1 - skipped, r - 1 - i as u64);
                    }
                    next = c + 1;
                }
                rank as usize
            }
        }
    }

    /// Every edge of the universe in lexicographic order.
    pub fn universe(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.universe_size());
        let r = self.r;
        let n = self.n as u32;
        match self.kind {
            GroundKind::Partite => {
                let mut cur = vec![0u32; r];
                loop {
                    out.push(Edge::from_slice(&cur));
                    let mut pos = r;
                    loop {
                        if pos == 0 {
                            return out;
                        }
                        pos -= 1;
                        cur[pos] += 1;
                        if cur[pos] < n {
                            break;
                        }
                        cur[pos] = 0;
                    }
                }
            }
            GroundKind::General => {
                let mut cur: Vec<u32> = (0..r as u32).collect();
                loop {
                    out.push(Edge::from_slice(&cur));
                    // rightmost position that can still advance
                    let mut pos = r;
                    loop {
                        if pos == 0 {
                            return out;
                        }
                        pos -= 1;
                        if cur[pos] < n - (r - pos) as u32 {
                            break;
                        }
                    }
                    cur[pos] += 1;
                    for j in pos + 1..r {
                        cur[j] = cur[j - 1] + 1;
                    }
                }
            }
        }
    }

    /// The edges covered by `e` in the shifting order: each obtained by
    /// lowering one vertex by exactly one step while staying valid.
    pub fn lower_covers(&self, e: &Edge) -> Vec<Edge> {
        let s = e.as_slice();
        let mut out = Vec::new();
        for pos in 0..s.len() {
            if s[pos] == 0 {
                continue;
            }
            if self.kind == GroundKind::General && pos > 0 && s[pos - 1] + 1 == s[pos] {
                continue;
            }
            let mut lower = e.clone();
            lower.as_mut_slice()[pos] -= 1;
            out.push(lower);
        }
        out
    }

    /// 1-based label of a vertex: `m_i`/`w_j` for bipartite, `v_i` for the
    /// general kind and `V<s>_i` for the sides of `r >= 3` partite sets.
    pub fn vertex_label(&self, v: Vertex) -> String {
        match (self.kind, self.r) {
            (GroundKind::General, _) => format!("v_{}", v.index + 1),
            (GroundKind::Partite, 2) => {
                format!("{}_{}", if v.side == 0 { "m" } else { "w" }, v.index + 1)
            }
            (GroundKind::Partite, _) => format!("V{}_{}", v.side + 1, v.index + 1),
        }
    }

    /// Edge label with vertex labels joined by `sep` (`""` gives `m_3w_1`).
    pub fn edge_label(&self, e: &Edge, sep: &str) -> String {
        self.vertices(e).map(|v| self.vertex_label(v)).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroundKind::Partite => write!(f, "[{}]^{}", self.n, self.r),
            GroundKind::General => write!(f, "C([{}], {})", self.n, self.r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_is_lexicographic_and_ranked() {
        for ground in [
            GroundSet::partite(2, 3).unwrap(),
            GroundSet::partite(3, 2).unwrap(),
            GroundSet::general(6, 3).unwrap(),
            GroundSet::general(5, 2).unwrap(),
            GroundSet::general(4, 4).unwrap(),
        ] {
            let all = ground.universe();
            assert_eq!(all.len(), ground.universe_size());
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for (i, e) in all.iter().enumerate() {
                ground.check_edge(e).unwrap();
                assert_eq!(ground.edge_rank(e), i, "{ground} {:?}", e);
            }
        }
    }

    #[test]
    fn edge_validation() {
        let g = GroundSet::general(5, 2).unwrap();
        assert!(g.check_edge(&Edge::from([2, 1])).is_err());
        assert!(g.check_edge(&Edge::from([1, 5])).is_err());
        assert!(g.check_edge(&Edge::from([1, 2, 3])).is_err());
        let p = GroundSet::partite(2, 2).unwrap();
        assert!(p.check_edge(&Edge::from([1, 1])).is_ok());
        assert!(p.check_edge(&Edge::from([0, 2])).is_err());
        assert!(GroundSet::partite(0, 2).is_err());
        assert!(GroundSet::general(2, 3).is_err());
        assert!(GroundSet::partite(10, 100).is_err());
    }

    #[test]
    fn disjointness() {
        let p = GroundSet::partite(2, 3).unwrap();
        // (m1,w2) and (m2,w1) share nothing even though the index 0 appears in both
        assert!(p.disjoint(&Edge::from([0, 1]), &Edge::from([1, 0])));
        assert!(!p.disjoint(&Edge::from([0, 1]), &Edge::from([0, 2])));
        let g = GroundSet::general(5, 2).unwrap();
        assert!(!g.disjoint(&Edge::from([0, 1]), &Edge::from([1, 2])));
        assert!(g.disjoint(&Edge::from([0, 3]), &Edge::from([1, 2])));
    }

    #[test]
    fn lower_covers_respect_strictness() {
        let g = GroundSet::general(5, 2).unwrap();
        assert_eq!(g.lower_covers(&Edge::from([1, 2])), vec![Edge::from([0, 2])]);
        assert_eq!(g.lower_covers(&Edge::from([1, 3])), vec![Edge::from([0, 3]), Edge::from([1, 2])]);
        let p = GroundSet::partite(2, 3).unwrap();
        assert_eq!(p.lower_covers(&Edge::from([0, 0])), Vec::<Edge>::new());
        assert_eq!(p.lower_covers(&Edge::from([1, 1])).len(), 2);
    }

    #[test]
    fn labels() {
        let p = GroundSet::partite(2, 6).unwrap();
        assert_eq!(p.edge_label(&Edge::from([2, 0]), ""), "m_3w_1");
        assert_eq!(p.edge_label(&Edge::from([0, 0]), " "), "m_1 w_1");
        let g = GroundSet::general(5, 2).unwrap();
        assert_eq!(g.edge_label(&Edge::from([0, 3]), " "), "v_1 v_4");
        let t = GroundSet::partite(3, 2).unwrap();
        assert_eq!(t.vertex_label(Vertex::new(2, 1)), "V3_2");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }
}
