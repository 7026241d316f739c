use serde::{Deserialize, Serialize};

use crate::error::{BpbError, Result};
use crate::par::Exec;

/// Knobs shared by the sampling estimators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    /// Samples per sphere dimension for the norm-attainment mesh. In the
    /// plane this is the number of angular directions.
    pub resolution: usize,
    /// Coarse grid used to seed the supremum searches over pairs.
    pub pair_resolution: usize,
    /// How many of the best coarse candidates are refined by local search.
    pub refine_top: usize,
    pub tol: f64,
    /// Added to `1 - δ` when sampling the (open) constraint set.
    pub delta_slack: f64,
    pub seed: u64,
    pub parallel: bool,
    /// Smallest index range handed to one worker.
    pub min_chunk: usize,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            resolution: 1000,
            pair_resolution: 96,
            refine_top: 8,
            tol: 1e-9,
            delta_slack: 0.0,
            seed: 0,
            parallel: true,
            min_chunk: 64,
        }
    }
}

impl EstimatorConfig {
    pub const MIN_RESOLUTION: usize = 8;

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn with_pair_resolution(mut self, pair_resolution: usize) -> Self {
        self.pair_resolution = pair_resolution;
        self
    }

    pub fn with_refine_top(mut self, refine_top: usize) -> Self {
        self.refine_top = refine_top;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for r in [self.resolution, self.pair_resolution] {
            if r < Self::MIN_RESOLUTION {
                return Err(BpbError::ResolutionTooSmall {
                    found: r,
                    min: Self::MIN_RESOLUTION,
                });
            }
        }
        if self.refine_top == 0 {
            return Err(BpbError::InvalidParameter("refine_top must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(BpbError::InvalidParameter(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.delta_slack.is_nan() || self.delta_slack < 0.0 {
            return Err(BpbError::InvalidParameter(format!(
                "delta_slack must be nonnegative, got {}",
                self.delta_slack
            )));
        }
        Ok(())
    }

    pub fn exec(&self) -> Exec {
        Exec {
            parallel: self.parallel,
            min_chunk: self.min_chunk,
        }
    }
}
