//! Subgroup distance problems for cyclic and two-generator permutation groups.
//!
//! Permutation arithmetic, the Hamming, Cayley and l∞ metrics, a
//! polynomial-time decision procedure for l∞ distance at most 1 from a cyclic
//! group, and generators for reductions from 3-SAT and exact hitting set
//! together with brute-force oracles that check them.

pub mod constructions;
pub mod corpus;
pub mod decimal;
pub mod error;
pub mod formats;
pub mod linfty_one;
pub mod metrics;
pub mod numth;
pub mod oracle;
pub mod perm;
pub mod reductions;
pub mod twosat;

pub use error::{Error, Result};
pub use metrics::Metric;
pub use perm::{CycleDecomposition, Permutation};
