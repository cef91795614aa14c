use std::cmp::Ordering;

use crate::bitset::BitVector;
use crate::error::Result;
use crate::extent::{Interval1D, Kind};
use crate::matrix::IntersectionMatrix;

use super::{check_numbering, Matcher};

/// Sort-based matching: sweep the sorted endpoints while keeping the active
/// subscriptions and updates in two bitmaps.
#[derive(Debug, Clone, Copy, Default)]
pub struct SortBased;

impl Matcher for SortBased {
    fn name(&self) -> String {
        "sbm".into()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        match_sbm_1d(subs, upds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Endpoint {
    pub coord: f64,
    pub upper: bool,
    pub kind: Kind,
    /// 0-based position in its list.
    pub index: usize,
}

/// Ascending coordinate; at equal coordinates upper bounds come first so
/// that intervals which only touch never coexist in the active sets.
fn endpoint_order(a: &Endpoint, b: &Endpoint) -> Ordering {
    a.coord
        .partial_cmp(&b.coord)
        .expect("interval bounds are never NaN")
        .then_with(|| b.upper.cmp(&a.upper))
        .then_with(|| a.kind.cmp(&b.kind))
        .then_with(|| a.index.cmp(&b.index))
}

/// The sorted endpoint list, `2 (n + m)` entries.
pub(crate) fn endpoints(subs: &[Interval1D], upds: &[Interval1D]) -> Vec<Endpoint> {
    let mut list = Vec::with_capacity(2 * (subs.len() + upds.len()));
    for (kind, items) in [(Kind::Subscription, subs), (Kind::Update, upds)] {
        for (index, iv) in items.iter().enumerate() {
            list.push(Endpoint {
                coord: iv.low(),
                upper: false,
                kind,
                index,
            });
            list.push(Endpoint {
                coord: iv.high(),
                upper: true,
                kind,
                index,
            });
        }
    }
    list.sort_unstable_by(endpoint_order);
    list
}

pub fn match_sbm_1d(subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
    check_numbering(subs, upds)?;
    let (n, m) = (subs.len(), upds.len());
    let mut matrix = IntersectionMatrix::new(n, m);
    let mut active_subs = BitVector::new(n);
    let mut active_upds = BitVector::new(m);

    for p in endpoints(subs, upds) {
        match (p.kind, p.upper) {
            (Kind::Subscription, false) => active_subs.insert(p.index),
            (Kind::Update, false) => active_upds.insert(p.index),
            (Kind::Subscription, true) => {
                active_subs.remove(p.index);
                matrix.or_row(p.index, &active_upds)?;
            }
            (Kind::Update, true) => {
                active_upds.remove(p.index);
                matrix.or_column(p.index, &active_subs)?;
            }
        }
    }
    Ok(matrix)
}
