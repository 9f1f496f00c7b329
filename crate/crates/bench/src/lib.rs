//! Shared inputs for the criterion benchmarks.

use esd_core::{werner_like, DensityMatrix, WernerLikeParams};

/// A mixed, entangled Werner-like state away from any special angle.
pub fn sample_state() -> DensityMatrix {
    werner_like(&sample_params())
}

pub fn sample_params() -> WernerLikeParams {
    WernerLikeParams::new(0.8, 0.6).expect("fixed parameters are in range")
}
