use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::matchers::{match_d, BruteForce, GridBased, GridConfig, IntervalTreeMatching, Matcher, SortBased};
use crate::parallel::{ParallelBruteForce, ParallelConfig, ParallelItm};

use super::workload::WorkloadSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Bf,
    Sbm,
    Gb,
    Itm,
    BfPar,
    ItmPar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Bf,
        Algorithm::Sbm,
        Algorithm::Gb,
        Algorithm::Itm,
        Algorithm::BfPar,
        Algorithm::ItmPar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bf => "bf",
            Algorithm::Sbm => "sbm",
            Algorithm::Gb => "gb",
            Algorithm::Itm => "itm",
            Algorithm::BfPar => "bf-par",
            Algorithm::ItmPar => "itm-par",
        }
    }

    pub fn is_parallel(self) -> bool {
        matches!(self, Algorithm::BfPar | Algorithm::ItmPar)
    }

    /// The matcher for this algorithm. `span` is the grid extent for `gb`.
    pub fn matcher(
        self,
        threads: usize,
        grid_cells: Option<usize>,
        span: (f64, f64),
    ) -> Result<Box<dyn Matcher>> {
        Ok(match self {
            Algorithm::Bf => Box::new(BruteForce),
            Algorithm::Sbm => Box::new(SortBased),
            Algorithm::Itm => Box::new(IntervalTreeMatching),
            Algorithm::Gb => {
                let cells = grid_cells.ok_or(Error::MissingGridCells)?;
                Box::new(GridBased::new(GridConfig::new(cells, span.0, span.1)?))
            }
            Algorithm::BfPar => Box::new(ParallelBruteForce {
                config: ParallelConfig::new(threads)?,
            }),
            Algorithm::ItmPar => Box::new(ParallelItm {
                config: ParallelConfig::new(threads)?,
            }),
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchOptions {
    /// Worker count; ignored by the sequential algorithms.
    pub threads: usize,
    pub grid_cells: Option<usize>,
    pub reps: usize,
    /// Time the same instance every repetition instead of a fresh one.
    pub fixed_workload: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            grid_cells: None,
            reps: 30,
            fixed_workload: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub algo: Algorithm,
    pub extents: usize,
    pub alpha: f64,
    pub dims: usize,
    pub threads: usize,
    pub grid_cells: Option<usize>,
    /// Seconds per repetition, including tree build / endpoint sort and
    /// matrix allocation.
    pub wall_times: Vec<f64>,
    /// Intersection count of each repetition's instance.
    pub intersections: Vec<usize>,
    pub mean: f64,
    pub stddev: f64,
    pub speedup: Option<f64>,
}

impl BenchResult {
    pub fn reps(&self) -> usize {
        self.wall_times.len()
    }

    /// `K` of the first repetition's instance.
    pub fn k(&self) -> usize {
        self.intersections.first().copied().unwrap_or(0)
    }
}

/// Mean and sample standard deviation.
pub(crate) fn mean_stddev(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Times `reps` runs of `algo`. Each repetition matches the workload
/// generated with seed `spec.seed ^ rep` (or `spec.seed` throughout with
/// `fixed_workload`); generation is not timed.
pub fn run_bench(spec: &WorkloadSpec, algo: Algorithm, options: &BenchOptions) -> Result<BenchResult> {
    spec.validate()?;
    if options.reps == 0 {
        return Err(Error::InvalidWorkload("at least one repetition is required".into()));
    }
    let threads = if algo.is_parallel() { options.threads } else { 1 };
    let matcher = algo.matcher(threads, options.grid_cells, (0.0, spec.length))?;
    let grid_cells = if algo == Algorithm::Gb { options.grid_cells } else { None };

    let fixed = if options.fixed_workload {
        Some(spec.generate()?)
    } else {
        None
    };
    let mut wall_times = Vec::with_capacity(options.reps);
    let mut intersections = Vec::with_capacity(options.reps);
    for rep in 0..options.reps {
        let fresh;
        let inst = match &fixed {
            Some(inst) => inst,
            None => {
                fresh = spec.for_rep(rep as u64).generate()?;
                &fresh
            }
        };
        let start = Instant::now();
        let m = match_d(inst, &matcher)?;
        wall_times.push(start.elapsed().as_secs_f64());
        intersections.push(m.count_ones());
    }

    let (mean, stddev) = mean_stddev(&wall_times);
    Ok(BenchResult {
        algo,
        extents: spec.extents,
        alpha: spec.alpha,
        dims: spec.dims,
        threads,
        grid_cells,
        wall_times,
        intersections,
        mean,
        stddev,
        speedup: None,
    })
}

/// Sets `speedup = baseline.mean / mean` on every result whose
/// configuration has a `threads == 1` baseline among `results`.
pub fn fill_speedups(results: &mut [BenchResult]) {
    let baselines: Vec<_> = results
        .iter()
        .filter(|r| r.threads == 1)
        .map(|r| ((r.algo, r.extents, r.alpha.to_bits(), r.dims, r.grid_cells), r.mean))
        .collect();
    for r in results.iter_mut() {
        let key = (r.algo, r.extents, r.alpha.to_bits(), r.dims, r.grid_cells);
        r.speedup = baselines
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, base)| base / r.mean);
    }
}
