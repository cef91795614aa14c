use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extent::{Extent, Kind, MatchInstance};

/// Length of the routing space along each dimension.
pub const DEFAULT_LENGTH: f64 = 1e6;

/// Random workload: `extents / 2` subscriptions and as many updates, all of
/// length `alpha * length / extents`, placed uniformly in `[0, length]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkloadSpec {
    pub extents: usize,
    pub alpha: f64,
    pub length: f64,
    pub dims: usize,
    pub seed: u64,
}

impl WorkloadSpec {
    pub fn new(extents: usize, alpha: f64) -> Self {
        Self {
            extents,
            alpha,
            length: DEFAULT_LENGTH,
            dims: 1,
            seed: 0,
        }
    }

    pub fn with_dims(self, dims: usize) -> Self {
        Self { dims, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_length(self, length: f64) -> Self {
        Self { length, ..self }
    }

    /// Spec for repetition `rep`: same parameters, seed `seed ^ rep`.
    pub fn for_rep(self, rep: u64) -> Self {
        self.with_seed(self.seed ^ rep)
    }

    /// Extent length `l = alpha * L / N`; zero when there are no extents.
    pub fn extent_length(&self) -> f64 {
        if self.extents == 0 {
            0.0
        } else {
            self.alpha * self.length / self.extents as f64
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidWorkload(msg));
        if !self.extents.is_multiple_of(2) {
            return bad(format!("extent count must be even, got {}", self.extents));
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(self.length > 0.0) || !self.length.is_finite() {
            return bad(format!("routing space length must be positive, got {}", self.length));
        }
        if self.dims == 0 {
            return Err(Error::ZeroDimensions);
        }
        let l = self.extent_length();
        if self.extents > 0 && l > self.length {
            return bad(format!(
                "extent length {l} exceeds the routing space {}; alpha too large for N",
                self.length
            ));
        }
        Ok(())
    }

    /// Generates the instance. Deterministic in the spec: subscriptions are
    /// drawn first, then updates, one lower bound per dimension each.
    pub fn generate(&self) -> Result<MatchInstance> {
        self.validate()?;
        let l = self.extent_length();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let half = self.extents / 2;
        let mut draw = |kind| -> Result<Vec<Extent>> {
            (1..=half)
                .map(|id| {
                    let bounds: Vec<(f64, f64)> = (0..self.dims)
                        .map(|_| loop {
                            let low = rng.gen_range(0.0..=self.length - l);
                            if low + l <= self.length {
                                break (low, low + l);
                            }
                        })
                        .collect();
                    Extent::new(id, kind, &bounds)
                })
                .collect()
        };
        let subs = draw(Kind::Subscription)?;
        let upds = draw(Kind::Update)?;
        MatchInstance::new(self.dims, subs, upds)
    }
}
