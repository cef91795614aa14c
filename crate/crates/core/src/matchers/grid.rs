use std::ops::RangeInclusive;

use crate::bitset::WORD_BITS;
use crate::error::{Error, Result};
use crate::extent::Interval1D;
use crate::matrix::IntersectionMatrix;

use super::{check_numbering, Matcher};

/// `cells` equal-width cells covering `[low, high)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    cells: usize,
    low: f64,
    high: f64,
}

impl GridConfig {
    pub fn new(cells: usize, low: f64, high: f64) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidGrid("cell count must be at least 1".into()));
        }
        if !(low < high) || !low.is_finite() || !high.is_finite() {
            return Err(Error::InvalidGrid(format!("span [{low}, {high}) is empty or not finite")));
        }
        Ok(Self { cells, low, high })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn span(&self) -> (f64, f64) {
        (self.low, self.high)
    }

    pub fn cell_width(&self) -> f64 {
        (self.high - self.low) / self.cells as f64
    }

    #[inline]
    fn cell_of(&self, x: f64) -> usize {
        let c = ((x - self.low) / self.cell_width()).floor();
        (c.max(0.0) as usize).min(self.cells - 1)
    }

    /// Cells an interval is mapped to. The last cell is the one holding the
    /// upper bound; for an upper bound on a cell boundary this adds one cell
    /// the open interval does not reach, which refinement filters out.
    pub fn cells_for(&self, iv: &Interval1D) -> Result<RangeInclusive<usize>> {
        if iv.low() < self.low || iv.high() > self.high {
            return Err(Error::OutsideGrid {
                low: iv.low(),
                high: iv.high(),
                span_low: self.low,
                span_high: self.high,
            });
        }
        Ok(self.cell_of(iv.low())..=self.cell_of(iv.high()))
    }
}

/// Grid-based matching with brute-force refinement inside each cell, so
/// extents that share a cell without overlapping are never reported.
#[derive(Debug, Clone, Copy)]
pub struct GridBased {
    pub config: GridConfig,
}

impl GridBased {
    pub fn new(config: GridConfig) -> Self {
        Self { config }
    }
}

impl Matcher for GridBased {
    fn name(&self) -> String {
        "gb".into()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        match_gb_1d(subs, upds, &self.config)
    }
}

pub fn match_gb_1d(
    subs: &[Interval1D],
    upds: &[Interval1D],
    config: &GridConfig,
) -> Result<IntersectionMatrix> {
    check_numbering(subs, upds)?;
    let mut sub_cells: Vec<Vec<(f64, f64, u32)>> = vec![Vec::new(); config.cells];
    for (i, s) in subs.iter().enumerate() {
        for c in config.cells_for(s)? {
            sub_cells[c].push((s.low(), s.high(), i as u32));
        }
    }
    let mut upd_cells: Vec<Vec<u32>> = vec![Vec::new(); config.cells];
    for (j, u) in upds.iter().enumerate() {
        for c in config.cells_for(u)? {
            upd_cells[c].push(j as u32);
        }
    }

    let mut m = IntersectionMatrix::new(subs.len(), upds.len());
    for (cell_subs, cell_upds) in sub_cells.iter().zip(&upd_cells) {
        for &j in cell_upds {
            let u = &upds[j as usize];
            let (ul, uh) = (u.low(), u.high());
            let column = m.column_words_mut(j as usize);
            // Cell entries are in ascending row order; OR keeps pairs
            // found in several cells idempotent.
            let mut word = 0usize;
            let mut bits = 0u64;
            for &(l, h, i) in cell_subs {
                let w = i as usize / WORD_BITS;
                if w != word {
                    column[word] |= bits;
                    word = w;
                    bits = 0;
                }
                bits |= (((l < uh) & (ul < h)) as u64) << (i as usize % WORD_BITS);
            }
            if !cell_subs.is_empty() {
                column[word] |= bits;
            }
        }
    }
    Ok(m)
}
