//! Spectral pairs for clusters `Ω = A + [0,1]`, integer zero sets of the
//! exponential sums `δ̂_Γ(k) = Σ_j e^{2πiγ_j k}`, flag patterns in difference
//! sets, and the rationality certificates they support.
//!
//! Exact verdicts are computed in cyclotomic fields; nothing on an exact path
//! goes through floating point.

pub mod arith;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod flags;
pub mod json;
pub mod oracle;
pub mod pair;
pub mod spectrum;

pub use cluster::Cluster;
pub use error::{Error, Result};
pub use flags::{Flag, ThresholdMode};
pub use spectrum::{FrequencyValue, Gamma, Mode};
