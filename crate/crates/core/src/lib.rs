//! Rainbow matchings in families of bipartite, `r`-partite and `r`-uniform
//! hypergraphs.
//!
//! A *rainbow matching* of a family `(F_1, ..., F_k)` of hypergraphs over a
//! shared ground set is a choice of pairwise disjoint edges `e_i ∈ F_i`. This
//! crate provides:
//!
//! * ground sets, edges, hypergraphs and families ([`ground`], [`hypergraph`]);
//! * exact brute-force oracles for `ν(H)` and rainbow matchings ([`oracle`]);
//! * the shifting (compression) operator with a reversible log and the
//!   constructive pull-back of rainbow matchings ([`shifting`]);
//! * constructive solvers: the longest-edge algorithm for the Hall-type size
//!   condition, the greedy bipartite solver, the `K_n` construction for
//!   `r = 2`, the 3-partite reduction, the degree-matrix permutation solver and
//!   the large-`n` procedure ([`solvers`]);
//! * closed-form thresholds and sharpness constructions ([`extremal`]);
//! * exhaustive and randomized verification harnesses ([`verify`]);
//! * the JSON instance format and result documents ([`format`]).
//!
//! Vertex indices are 0-based everywhere in the API. Serialized forms and
//! text renderings use 1-based labels (`m_1`, `w_3`, `v_2`).

pub mod error;
pub mod extremal;
pub mod format;
pub mod ground;
pub mod hypergraph;
pub mod oracle;
pub mod shifting;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use ground::{binomial, Edge, GroundKind, GroundSet, Vertex};
pub use hypergraph::{Family, Hypergraph, RainbowMatching};
