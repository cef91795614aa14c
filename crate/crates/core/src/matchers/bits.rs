use crate::extent::Interval1D;

/// Binary-search intersection counting over sorted start and end points.
///
/// Counts only; it cannot say which intervals intersect.
#[derive(Debug, Clone)]
pub struct BitsIndex {
    starts: Vec<f64>,
    ends: Vec<f64>,
}

impl BitsIndex {
    pub fn new(intervals: &[Interval1D]) -> Self {
        let mut starts: Vec<f64> = intervals.iter().map(Interval1D::low).collect();
        let mut ends: Vec<f64> = intervals.iter().map(Interval1D::high).collect();
        starts.sort_unstable_by(f64::total_cmp);
        ends.sort_unstable_by(f64::total_cmp);
        Self { starts, ends }
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// Number of stored intervals intersecting `q`: everything except those
    /// ending at or before `q.low` and those starting at or after `q.high`.
    pub fn count(&self, q: &Interval1D) -> usize {
        let ending_before = self.ends.partition_point(|&e| e <= q.low());
        let starting_after = self.len() - self.starts.partition_point(|&s| s < q.high());
        self.len() - ending_before - starting_after
    }
}

/// One-shot form of [`BitsIndex::count`].
pub fn bits_count(intervals: &[Interval1D], q: &Interval1D) -> usize {
    BitsIndex::new(intervals).count(q)
}
