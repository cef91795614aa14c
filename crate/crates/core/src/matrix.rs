//! Dense `n x m` bit matrix holding the match results.
//!
//! Storage is column-major: column `j` is a contiguous run of
//! `ceil(n / 64)` words. A query for update `j` writes only inside its own
//! column, so workers that own disjoint column ranges never share a word.
//! Row and column indices are 0-based (row `i` is the subscription with id
//! `i + 1`).

use std::fmt;
use std::ops::Range;

use crate::bitset::{words_for, BitVector, Ones, WORD_BITS};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    rows: usize,
    cols: usize,
    words_per_col: usize,
    bits: Vec<u64>,
}

impl IntersectionMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_col = words_for(rows);
        Self {
            rows,
            cols,
            words_per_col,
            bits: vec![0; words_per_col * cols],
        }
    }

    /// Matrix with every bit set.
    pub fn filled(rows: usize, cols: usize) -> Self {
        let mut m = Self::new(rows, cols);
        let all = BitVector::from_ones(rows, 0..rows);
        for j in 0..cols {
            m.column_words_mut(j).copy_from_slice(all.words());
        }
        m
    }

    pub fn from_pairs(
        rows: usize,
        cols: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut m = Self::new(rows, cols);
        for (i, j) in pairs {
            m.set(i, j)?;
        }
        Ok(m)
    }

    /// Builds a matrix from dense 0/1 rows; all rows must have the same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.put(i, j);
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.rows,
            });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Result<bool> {
        self.check(i, j)?;
        Ok(self.bit(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize) -> Result<()> {
        self.check(i, j)?;
        self.put(i, j);
        Ok(())
    }

    #[inline]
    pub(crate) fn bit(&self, i: usize, j: usize) -> bool {
        self.bits[j * self.words_per_col + i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub(crate) fn put(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[j * self.words_per_col + i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub(crate) fn column_words_mut(&mut self, j: usize) -> &mut [u64] {
        let start = j * self.words_per_col;
        &mut self.bits[start..start + self.words_per_col]
    }

    pub fn column_words(&self, j: usize) -> &[u64] {
        let start = j * self.words_per_col;
        &self.bits[start..start + self.words_per_col]
    }

    /// ORs an `n`-bit vector into column `j`, one word at a time.
    pub fn or_column(&mut self, j: usize, rowbits: &BitVector) -> Result<()> {
        if rowbits.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: rowbits.len(),
            });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        for (dst, src) in self.column_words_mut(j).iter_mut().zip(rowbits.words()) {
            *dst |= *src;
        }
        Ok(())
    }

    /// ORs an `m`-bit vector into row `i`. Row bits are spread over all
    /// columns, so this walks the set bits of `colbits` one by one.
    pub fn or_row(&mut self, i: usize, colbits: &BitVector) -> Result<()> {
        if colbits.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: colbits.len(),
            });
        }
        if i >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.rows,
            });
        }
        for j in colbits.iter_ones() {
            self.put(i, j);
        }
        Ok(())
    }

    pub fn clear_column(&mut self, j: usize) -> Result<()> {
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        self.column_words_mut(j).fill(0);
        Ok(())
    }

    /// Clears row `i` bit by bit across all columns.
    pub fn clear_row(&mut self, i: usize) -> Result<()> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.rows,
            });
        }
        let mask = !(1u64 << (i % WORD_BITS));
        let offset = i / WORD_BITS;
        for j in 0..self.cols {
            self.bits[j * self.words_per_col + offset] &= mask;
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Elementwise AND.
    pub fn and(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.and_assign(other)?;
        Ok(out)
    }

    pub fn and_assign(&mut self, other: &Self) -> Result<()> {
        self.same_shape(other)?;
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= *b;
        }
        Ok(())
    }

    /// Number of set bits (the intersection count `K`).
    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_count(&self, j: usize) -> usize {
        self.column_words(j)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn column_ones(&self, j: usize) -> Ones<'_> {
        Ones::new(self.column_words(j))
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cols).filter(move |&j| self.bit(i, j))
    }

    /// All set `(row, col)` pairs, sorted by row then column.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.cols)
            .flat_map(|j| self.column_ones(j).map(move |i| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for j in 0..self.cols {
            for i in self.column_ones(j) {
                t.put(j, i);
            }
        }
        t
    }

    /// First differing `(row, col)` in row-major order, if any.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(usize, usize)>> {
        self.same_shape(other)?;
        let mut best: Option<(usize, usize)> = None;
        for j in 0..self.cols {
            let a = self.column_words(j);
            let b = other.column_words(j);
            for (w, (x, y)) in a.iter().zip(b).enumerate() {
                let diff = x ^ y;
                if diff != 0 {
                    let i = w * WORD_BITS + diff.trailing_zeros() as usize;
                    if best.is_none_or(|(bi, _)| i < bi) {
                        best = Some((i, j));
                    }
                    break;
                }
            }
        }
        Ok(best)
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.bit(i, j) as u8).collect())
            .collect()
    }

    /// Splits the storage into disjoint mutable column blocks.
    ///
    /// `ranges` must be contiguous, ascending and cover `0..cols` exactly.
    pub fn split_columns_mut(&mut self, ranges: &[Range<usize>]) -> Result<Vec<ColumnBlock<'_>>> {
        let mut expected = 0;
        for r in ranges {
            if r.start != expected || r.end < r.start {
                return Err(Error::IndexOutOfRange {
                    index: r.start,
                    len: self.cols,
                });
            }
            expected = r.end;
        }
        if expected != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: expected,
            });
        }
        let words_per_col = self.words_per_col;
        let rows = self.rows;
        let mut rest = self.bits.as_mut_slice();
        let mut blocks = Vec::with_capacity(ranges.len());
        for r in ranges {
            let (head, tail) = rest.split_at_mut(r.len() * words_per_col);
            rest = tail;
            blocks.push(ColumnBlock {
                columns: r.clone(),
                rows,
                words_per_col,
                words: head,
            });
        }
        Ok(blocks)
    }
}

/// Exclusive view of a contiguous range of matrix columns.
pub struct ColumnBlock<'a> {
    columns: Range<usize>,
    rows: usize,
    words_per_col: usize,
    words: &'a mut [u64],
}

impl ColumnBlock<'_> {
    pub fn columns(&self) -> Range<usize> {
        self.columns.clone()
    }

    /// Sets bit `(i, j)` where `j` is a global column index inside this block.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.rows && self.columns.contains(&j));
        let local = j - self.columns.start;
        self.words[local * self.words_per_col + i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub(crate) fn column_words_mut(&mut self, j: usize) -> &mut [u64] {
        let start = (j - self.columns.start) * self.words_per_col;
        &mut self.words[start..start + self.words_per_col]
    }
}

impl fmt::Debug for IntersectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntersectionMatrix {}x{} K={}", self.rows, self.cols, self.count_ones())?;
        if self.rows <= 16 && self.cols <= 16 {
            for row in self.to_dense() {
                write!(f, "\n  ")?;
                for b in row {
                    write!(f, "{b}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_matrix_is_zero() {
        let m = IntersectionMatrix::new(3, 2);
        for i in 0..3 {
            for j in 0..2 {
                assert!(!m.get(i, j).unwrap());
            }
        }
        assert_eq!(m.count_ones(), 0);
    }

    #[test]
    fn set_is_idempotent() {
        let mut m = IntersectionMatrix::new(3, 2);
        m.set(0, 0).unwrap();
        assert!(m.get(0, 0).unwrap());
        m.set(0, 0).unwrap();
        assert_eq!(m.count_ones(), 1);
    }

    #[test]
    fn out_of_range() {
        let mut m = IntersectionMatrix::new(3, 2);
        assert_eq!(m.set(3, 0), Err(Error::IndexOutOfRange { index: 3, len: 3 }));
        assert_eq!(m.get(0, 2), Err(Error::IndexOutOfRange { index: 2, len: 2 }));
    }

    #[test]
    fn or_column_and_row() {
        let mut m = IntersectionMatrix::new(3, 2);
        m.or_column(0, &BitVector::from_ones(3, [0, 2])).unwrap();
        assert_eq!(m.to_dense(), vec![vec![1, 0], vec![0, 0], vec![1, 0]]);

        let mut m = IntersectionMatrix::new(3, 2);
        m.or_row(0, &BitVector::from_ones(2, [0, 1])).unwrap();
        assert_eq!(m.to_dense(), vec![vec![1, 1], vec![0, 0], vec![0, 0]]);

        assert_eq!(
            m.or_row(0, &BitVector::new(3)),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 3
            })
        );
        assert!(m.or_column(0, &BitVector::new(2)).is_err());
    }

    #[test]
    fn or_columns_commute() {
        let a = BitVector::from_ones(3, [0, 2]);
        let b = BitVector::from_ones(3, [1]);
        let mut x = IntersectionMatrix::new(3, 2);
        x.or_column(0, &a).unwrap();
        x.or_column(1, &b).unwrap();
        let mut y = IntersectionMatrix::new(3, 2);
        y.or_column(1, &b).unwrap();
        y.or_column(0, &a).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn and_examples() {
        let a = IntersectionMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]).unwrap();
        assert_eq!(a.and(&IntersectionMatrix::filled(3, 2)).unwrap(), a);
        assert_eq!(
            a.and(&IntersectionMatrix::new(3, 2)).unwrap(),
            IntersectionMatrix::new(3, 2)
        );
        assert!(matches!(
            a.and(&IntersectionMatrix::new(2, 3)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn filled_keeps_padding_clear() {
        let m = IntersectionMatrix::filled(70, 3);
        assert_eq!(m.count_ones(), 210);
    }

    #[test]
    fn clear_row_and_column() {
        let mut m = IntersectionMatrix::filled(5, 4);
        m.clear_row(2).unwrap();
        m.clear_column(1).unwrap();
        assert_eq!(m.count_ones(), 20 - 4 - 5 + 1);
        assert!(m.row_ones(2).next().is_none());
        assert_eq!(m.column_count(1), 0);
    }

    #[test]
    fn transpose_and_pairs() {
        let a = IntersectionMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]).unwrap();
        assert_eq!(a.pairs(), vec![(0, 0), (1, 1), (2, 0), (2, 1)]);
        let t = a.transpose();
        assert_eq!(t.to_dense(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(t.count_ones(), a.count_ones());
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn first_difference_is_row_major() {
        let a = IntersectionMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]).unwrap();
        let mut b = a.clone();
        assert_eq!(a.first_difference(&b).unwrap(), None);
        b.set(1, 0).unwrap();
        let mut c = b.clone();
        c.set(0, 1).unwrap();
        assert_eq!(a.first_difference(&b).unwrap(), Some((1, 0)));
        assert_eq!(a.first_difference(&c).unwrap(), Some((0, 1)));
    }

    #[test]
    fn column_blocks_are_disjoint() {
        let mut m = IntersectionMatrix::new(70, 5);
        {
            let mut blocks = m.split_columns_mut(&[0..2, 2..2, 2..5]).unwrap();
            blocks[0].set(69, 1);
            blocks[2].set(0, 4);
            assert_eq!(blocks[1].columns(), 2..2);
        }
        assert_eq!(m.pairs(), vec![(0, 4), (69, 1)]);
        assert!(m.split_columns_mut(&[0..2, 3..5]).is_err());
        assert!(m.split_columns_mut(std::slice::from_ref(&(0..2))).is_err());
    }
}
