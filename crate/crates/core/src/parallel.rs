//! Fork-join versions of interval tree matching and brute force.
//!
//! Update indices are split into `p` contiguous ranges; each worker owns the
//! matrix columns of its range and writes nowhere else. The output does not
//! depend on `p` or on scheduling.

use std::ops::Range;
use std::thread;

use crate::error::{Error, Result};
use crate::extent::Interval1D;
use crate::interval_tree::IntervalTree;
use crate::matchers::{check_numbering, Bounds, Matcher};
use crate::matrix::IntersectionMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelConfig {
    workers: usize,
}

impl ParallelConfig {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::ZeroWorkers);
        }
        Ok(Self { workers })
    }

    /// One worker per logical core.
    pub fn available() -> Self {
        let workers = thread::available_parallelism().map_or(1, |n| n.get());
        Self { workers }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Static contiguous partition of `0..m` into `workers` ranges. Sizes
    /// differ by at most one; trailing ranges are empty when `workers > m`.
    pub fn chunks(&self, m: usize) -> Vec<Range<usize>> {
        let base = m / self.workers;
        let extra = m % self.workers;
        let mut start = 0;
        (0..self.workers)
            .map(|w| {
                let len = base + usize::from(w < extra);
                let r = start..start + len;
                start += len;
                r
            })
            .collect()
    }
}

fn run_chunked<F>(rows: usize, cols: usize, config: &ParallelConfig, work: F) -> Result<IntersectionMatrix>
where
    F: Fn(&mut crate::matrix::ColumnBlock<'_>) + Sync,
{
    let mut m = IntersectionMatrix::new(rows, cols);
    if cols == 0 {
        return Ok(m);
    }
    let ranges = config.chunks(cols);
    let blocks = m.split_columns_mut(&ranges)?;
    let work = &work;
    let mut blocks = blocks.into_iter();
    thread::scope(|scope| {
        let first = blocks.next();
        for mut block in blocks {
            scope.spawn(move || work(&mut block));
        }
        // The calling thread takes the first block, so p = 1 never spawns.
        if let Some(mut block) = first {
            work(&mut block);
        }
    });
    Ok(m)
}

/// Builds the subscription tree once, then runs the update queries in
/// parallel.
pub fn match_itm_parallel(
    subs: &[Interval1D],
    upds: &[Interval1D],
    config: &ParallelConfig,
) -> Result<IntersectionMatrix> {
    check_numbering(subs, upds)?;
    let tree = IntervalTree::build(subs.iter().copied());
    run_chunked(subs.len(), upds.len(), config, |block| {
        for j in block.columns() {
            tree.query(&upds[j], |s| block.set(s.id() - 1, j));
        }
    })
}

pub fn match_bf_parallel(
    subs: &[Interval1D],
    upds: &[Interval1D],
    config: &ParallelConfig,
) -> Result<IntersectionMatrix> {
    check_numbering(subs, upds)?;
    let bounds = Bounds::new(subs);
    run_chunked(subs.len(), upds.len(), config, |block| {
        for j in block.columns() {
            bounds.fill_column(&upds[j], block.column_words_mut(j));
        }
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ParallelItm {
    pub config: ParallelConfig,
}

impl Matcher for ParallelItm {
    fn name(&self) -> String {
        "itm-par".into()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        match_itm_parallel(subs, upds, &self.config)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParallelBruteForce {
    pub config: ParallelConfig,
}

impl Matcher for ParallelBruteForce {
    fn name(&self) -> String {
        "bf-par".into()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        match_bf_parallel(subs, upds, &self.config)
    }
}
