use crate::error::Result;
use crate::extent::Interval1D;
use crate::interval_tree::IntervalTree;
use crate::matrix::IntersectionMatrix;

use super::{check_numbering, Matcher};

/// Interval tree matching: build a tree over the subscriptions, then run one
/// overlap query per update, writing into that update's column.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalTreeMatching;

impl Matcher for IntervalTreeMatching {
    fn name(&self) -> String {
        "itm".into()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        match_itm_1d(subs, upds)
    }
}

pub fn match_itm_1d(subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
    check_numbering(subs, upds)?;
    let tree = IntervalTree::build(subs.iter().copied());
    let mut m = IntersectionMatrix::new(subs.len(), upds.len());
    for (j, u) in upds.iter().enumerate() {
        tree.query(u, |s| m.put(s.id() - 1, j));
    }
    Ok(m)
}
