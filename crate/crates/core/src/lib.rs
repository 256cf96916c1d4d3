//! Random Latin square graphs.
//!
//! Construct Latin squares, sample the subset / multiset / multigraph models
//! built from them, and measure the quantities that govern their behaviour:
//! coincidence pattern counts, clique and colouring numbers, the normalized
//! adjacency spectrum, connectivity and Hamiltonicity. The [`experiment`]
//! module runs reproducible Monte Carlo sweeps of any of these.

pub mod clique_color;
pub mod connectivity;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod latin;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
