use crate::bitset::{pack_flags, WORD_BITS};
use crate::error::Result;
use crate::extent::Interval1D;
use crate::matrix::IntersectionMatrix;

use super::{check_numbering, Matcher};

/// Tests every subscription/update pair: `n * m` predicate evaluations.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForce;

impl Matcher for BruteForce {
    fn name(&self) -> String {
        "bf".into()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        match_bf_1d(subs, upds)
    }
}

pub fn match_bf_1d(subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
    check_numbering(subs, upds)?;
    let bounds = Bounds::new(subs);
    let mut m = IntersectionMatrix::new(subs.len(), upds.len());
    for (j, u) in upds.iter().enumerate() {
        bounds.fill_column(u, m.column_words_mut(j));
    }
    Ok(m)
}

/// Subscription bounds split into two arrays so the column loop vectorizes.
pub(crate) struct Bounds {
    lows: Vec<f64>,
    highs: Vec<f64>,
}

impl Bounds {
    pub(crate) fn new(subs: &[Interval1D]) -> Self {
        Self {
            lows: subs.iter().map(Interval1D::low).collect(),
            highs: subs.iter().map(Interval1D::high).collect(),
        }
    }

    /// Writes the brute-force column for update `u`, 64 subscriptions per word.
    #[inline]
    pub(crate) fn fill_column(&self, u: &Interval1D, column: &mut [u64]) {
        let (ul, uh) = (u.low(), u.high());
        let mut flags = [0u8; WORD_BITS];
        let chunks = self.lows.chunks(WORD_BITS).zip(self.highs.chunks(WORD_BITS));
        for (word, (lows, highs)) in column.iter_mut().zip(chunks) {
            for ((f, &l), &h) in flags.iter_mut().zip(lows).zip(highs) {
                *f = ((l < uh) & (ul < h)) as u8;
            }
            *word = pack_flags(&flags[..lows.len()]);
        }
    }
}
