//! Closed-form thresholds and the sharpness constructions.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::ground::{binomial, Edge, GroundSet};
use crate::hypergraph::{Family, Hypergraph};

/// Which threshold a query asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMode {
    /// `f(n, r, k)` via the large-`n` formula.
    FGeneral,
    /// `f(n, 2, k)`, exact for all `n >= 2k`.
    FR2,
    /// `g(n, r, k) = (k - 1) n^(r-1)`.
    GPartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdQuery {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub mode: ThresholdMode,
}

impl ThresholdQuery {
    pub fn evaluate(&self) -> Result<u64> {
        if self.n == 0 || self.r == 0 || self.k == 0 {
            return Err(invalid!("n, r, k must all be at least 1"));
        }
        match self.mode {
            ThresholdMode::FGeneral => {
                if 2 * self.r > self.n {
                    return Err(invalid!("f(n,r,k) needs r <= n/2 (got r={}, n={})", self.r, self.n));
                }
                Ok(f_large_n(self.n, self.r, self.k))
            }
            ThresholdMode::FR2 => {
                if self.r != 2 {
                    return Err(invalid!("the exact formula for f(n,r,k) covers r = 2 only"));
                }
                f_r2(self.n, self.k)
            }
            ThresholdMode::GPartite => Ok(g_formula(self.n, self.r, self.k)),
        }
    }
}

/// `f(n, 2, k) = max(C(2k-1, 2), (k-1)(n-1) - C(k-1, 2))` for `n >= 2k`.
pub fn f_r2(n: usize, k: usize) -> Result<u64> {
    if k == 0 || n < 2 * k {
        return Err(invalid!("f(n,2,k) needs k >= 1 and n >= 2k (got n={n}, k={k})"));
    }
    let (n, k) = (n as u64, k as u64);
    let dense = binomial(2 * k - 1, 2);
    let star = (k - 1) * (n - 1) - binomial(k - 1, 2);
    Ok(dense.max(star))
}

/// `C(n, r) - C(n-k+1, r)`.
///
/// This is the value of `f(n, r, k)` only for `n` beyond an unspecified
/// `n_0(r, k)`; below that it is just the formula.
pub fn f_large_n(n: usize, r: usize, k: usize) -> u64 {
    let (n, r, k) = (n as u64, r as u64, k as u64);
    let rest = (n + 1).saturating_sub(k);
    binomial(n, r) - binomial(rest, r)
}

/// `g(n, r, k) = (k - 1) n^(r-1)`.
pub fn g_formula(n: usize, r: usize, k: usize) -> u64 {
    (k.saturating_sub(1) as u64) * (n as u64).pow(r.saturating_sub(1) as u32)
}

/// Largest `|H|` with `ν(H) < k` over `H ⊆ [n]^r`: the formula for
/// `k <= n`, and the whole universe `n^r` when `k > n` (no hypergraph on
/// `[n]^r` then has `k` disjoint edges).
pub fn g_value(n: usize, r: usize, k: usize) -> u64 {
    if k > n {
        (n as u64).pow(r as u32)
    } else {
        g_formula(n, r, k)
    }
}

/// `k` copies of the set of all edges of `[n]^r` meeting the first `k - 1`
/// vertices of side 1. Each member has `(k-1) n^(r-1)` edges and the family
/// has no rainbow matching.
pub fn star_family(n: usize, r: usize, k: usize) -> Result<Family> {
    if k == 0 {
        return Err(invalid!("k must be at least 1"));
    }
    if k - 1 > n {
        return Err(invalid!("star family needs k - 1 <= n (got k={k}, n={n})"));
    }
    let ground = GroundSet::partite(r, n)?;
    let star = Hypergraph::from_edges(ground, ground.universe().into_iter().filter(|e| e.get(0) < k - 1))?;
    Family::repeated(star, k)
}

/// The family on which the longest-edge algorithm halts although a rainbow
/// matching exists.
///
/// `F_1 = {m_c w_d : c, d <= q}` and `F_2 = ... = F_{q+1} =
/// {m_c w_d : c <= q} ∪ {m_c w_1 : c <= n}`.
pub fn steal_family(q: usize, n: usize) -> Result<Family> {
    if q < 3 || q >= n {
        return Err(invalid!("steal family needs 3 <= q < n (got q={q}, n={n})"));
    }
    let ground = GroundSet::partite(2, n)?;
    let q32 = q as u32;
    let first = Hypergraph::from_edges(ground, ground.universe().into_iter().filter(|e| e.get(0) < q && e.get(1) < q))?;
    let rest = Hypergraph::from_edges(
        ground,
        ground.universe().into_iter().filter(|e| e.as_slice()[0] < q32 || e.as_slice()[1] == 0),
    )?;
    let mut members = vec![first];
    members.extend(std::iter::repeat_n(rest, q));
    Family::new(members)
}

/// The `r = 3` pair: `F_1 = {(1,1,1)}` and `F_2` all edges of `[n]^3` meeting
/// it. There is no rainbow matching, while `|F_1| + |F_2| = 3n^2 - 3n + 2`.
pub fn r3_counterexample(n: usize) -> Result<Family> {
    if n < 2 {
        return Err(invalid!("the r = 3 counterexample needs n >= 2"));
    }
    let ground = GroundSet::partite(3, n)?;
    let apex = Edge::from([0, 0, 0]);
    let first = Hypergraph::from_edges(ground, [apex.clone()])?;
    let second = Hypergraph::from_edges(ground, ground.universe().into_iter().filter(|e| !ground.disjoint(e, &apex)))?;
    Family::new(vec![first, second])
}

/// All `r`-subsets of `[n]` containing vertex 1.
pub fn ekr_star(n: usize, r: usize) -> Result<Hypergraph> {
    if r == 0 || 2 * r > n {
        return Err(invalid!("EKR star needs 1 <= r <= n/2 (got r={r}, n={n})"));
    }
    let ground = GroundSet::general(n, r)?;
    Hypergraph::from_edges(ground, ground.universe().into_iter().filter(|e| e.get(0) == 0))
}
