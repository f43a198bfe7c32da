//! Stochastic Kronecker graphs `K(n, P)` and R-MAT.
//!
//! The vertex set is `Z_2^n`; a pair `{u, v}` is an edge independently with
//! probability `prod_k P[u_k][v_k]` for the symmetric 2x2 matrix
//! `P = [[gamma, beta], [beta, alpha]]` (index 1 is the "one" digit).
//!
//! * [`model`]: parameters, vertex arithmetic and edge probabilities;
//! * [`generator`]: naive, stratified and R-MAT samplers;
//! * [`predict`]: degree moments, degree-count mixture, regime classification,
//!   Hamming profile and critical fraction;
//! * [`patterns`]: base values of small patterns, closed forms, edge labelings,
//!   pair unions and second-moment certificates;
//! * [`empirical`]: measurements on realized graphs;
//! * [`stats`]: the statistical comparisons used by validation.

pub mod combinatorics;
pub mod edgelist;
pub mod empirical;
pub mod error;
pub mod generator;
pub mod model;
pub mod patterns;
pub mod predict;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use generator::{
    degree_histogram, generate_naive, generate_rmat, generate_stratified, Limits, RmatParams,
};
pub use model::{
    edge_probability, hamming, pair_class, weight, KroneckerParams, PairClass, SampledGraph,
    VertexId,
};
pub use patterns::PatternGraph;
pub use rng::SeedSpec;
