use std::fmt;

use thiserror::Error;

use crate::dynamic::DynamicMatcher;
use crate::error::Error;
use crate::extent::MatchInstance;
use crate::matchers::{match_d, BitsIndex, BruteForce, GridBased, GridConfig, IntervalTreeMatching, Matcher, SortBased};
use crate::matrix::IntersectionMatrix;
use crate::parallel::{ParallelBruteForce, ParallelConfig, ParallelItm};

use super::dynamic_run::random_move;
use super::workload::WorkloadSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub threads: usize,
    pub grid_cells: usize,
    /// Random moves replayed on a dynamic matcher, each audited against
    /// brute force. One-dimensional instances only.
    pub dynamic_moves: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            threads: ParallelConfig::available().workers(),
            grid_cells: 64,
            dynamic_moves: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Every algorithm that produced the reference matrix, `bf` first.
    pub algorithms: Vec<String>,
    pub moves_audited: usize,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OK: {} algorithms agree, K={}", self.algorithms.len(), self.k)
    }
}

/// Row and column indices are 1-based (extent ids).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyFailure {
    #[error("{algorithm} disagrees with bf at ({row},{col}): bf says {expected}, {algorithm} says {}", 1 - *expected)]
    Mismatch {
        algorithm: String,
        row: usize,
        col: usize,
        expected: u8,
    },

    #[error("column {col}: popcount {popcount} but binary-search count {bits}")]
    CountMismatch { col: usize, popcount: usize, bits: usize },

    #[error("after dynamic move {step}: matrix differs from brute force at ({row},{col})")]
    DynamicMismatch { step: usize, row: usize, col: usize },

    #[error("interval tree invalid after dynamic move {step}: {detail}")]
    TreeInvalid { step: usize, detail: String },

    #[error(transparent)]
    Core(#[from] Error),
}

pub fn default_matchers(span: (f64, f64), options: &VerifyOptions) -> Result<Vec<Box<dyn Matcher>>, Error> {
    let config = ParallelConfig::new(options.threads)?;
    Ok(vec![
        Box::new(SortBased),
        Box::new(GridBased::new(GridConfig::new(options.grid_cells, span.0, span.1)?)),
        Box::new(IntervalTreeMatching),
        Box::new(ParallelItm { config }),
        Box::new(ParallelBruteForce { config }),
    ])
}

fn first_mismatch(
    name: &str,
    reference: &IntersectionMatrix,
    other: &IntersectionMatrix,
) -> Result<(), VerifyFailure> {
    if let Some((i, j)) = reference.first_difference(other)? {
        return Err(VerifyFailure::Mismatch {
            algorithm: name.to_string(),
            row: i + 1,
            col: j + 1,
            expected: u8::from(reference.bit(i, j)),
        });
    }
    Ok(())
}

/// Checks every matcher against brute force, each column's popcount against
/// the binary-search count, and (for `d = 1`) a run of audited dynamic moves.
pub fn verify_instance<M: Matcher>(
    inst: &MatchInstance,
    matchers: &[M],
    options: &VerifyOptions,
) -> Result<VerifyReport, VerifyFailure> {
    let reference = match_d(inst, &BruteForce)?;
    let mut algorithms = vec![BruteForce.name()];
    for matcher in matchers {
        let m = match_d(inst, matcher)?;
        first_mismatch(&matcher.name(), &reference, &m)?;
        algorithms.push(matcher.name());
    }

    let mut moves_audited = 0;
    if inst.dims() == 1 {
        let (subs, upds) = inst.project(0);
        let index = BitsIndex::new(&subs);
        for (j, u) in upds.iter().enumerate() {
            let popcount = reference.column_count(j);
            let bits = index.count(u);
            if popcount != bits {
                return Err(VerifyFailure::CountMismatch {
                    col: j + 1,
                    popcount,
                    bits,
                });
            }
        }

        if !subs.is_empty() && !upds.is_empty() && options.dynamic_moves > 0 {
            moves_audited = audit_moves(subs, upds, options)?;
        }
    }

    Ok(VerifyReport {
        n: inst.n(),
        m: inst.m(),
        k: reference.count_ones(),
        algorithms,
        moves_audited,
    })
}

fn audit_moves(
    subs: Vec<crate::Interval1D>,
    upds: Vec<crate::Interval1D>,
    options: &VerifyOptions,
) -> Result<usize, VerifyFailure> {
    use rand::SeedableRng;

    let (lo, hi) = subs
        .iter()
        .chain(&upds)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), iv| {
            (lo.min(iv.low()), hi.max(iv.high()))
        });
    let mut dm = DynamicMatcher::build(subs, upds)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(options.seed);
    for step in 1..=options.dynamic_moves {
        random_move(&mut dm, &mut rng, (lo, hi))?;
        audit(&dm, step)?;
    }
    Ok(options.dynamic_moves)
}

pub(crate) fn audit(dm: &DynamicMatcher, step: usize) -> Result<(), VerifyFailure> {
    let fresh = crate::matchers::match_bf_1d(dm.subscriptions(), dm.updates())?;
    if let Some((i, j)) = fresh.first_difference(dm.matrix())? {
        return Err(VerifyFailure::DynamicMismatch {
            step,
            row: i + 1,
            col: j + 1,
        });
    }
    dm.validate().map_err(|v| VerifyFailure::TreeInvalid {
        step,
        detail: v.to_string(),
    })
}

/// Generates the workload and verifies it with [`default_matchers`].
pub fn verify_workload(spec: &WorkloadSpec, options: &VerifyOptions) -> Result<VerifyReport, VerifyFailure> {
    let inst = spec.generate()?;
    let matchers = default_matchers((0.0, spec.length), options)?;
    verify_instance(&inst, &matchers, options)
}
