//! One-dimensional matching algorithms and the reduction from d-rectangles
//! to per-dimension matching.
//!
//! Every matcher returns an `n x m` [`IntersectionMatrix`] whose bit `(i, j)`
//! is set iff subscription `i + 1` intersects update `j + 1` under
//! [`intersect_1d`](crate::intersect_1d). Inputs must be numbered by
//! position: `subs[i].id() == i + 1`, likewise for updates.

mod bits;
mod brute_force;
mod grid;
mod itm;
mod sort_based;

pub use bits::{bits_count, BitsIndex};
pub use brute_force::{match_bf_1d, BruteForce};
pub use grid::{match_gb_1d, GridBased, GridConfig};
pub use itm::{match_itm_1d, IntervalTreeMatching};
pub use sort_based::{match_sbm_1d, SortBased};

pub(crate) use brute_force::Bounds;

use crate::error::{Error, Result};
use crate::extent::{Interval1D, Kind, MatchInstance};
use crate::matrix::IntersectionMatrix;

/// A one-dimensional matching algorithm.
pub trait Matcher: Sync {
    fn name(&self) -> String;

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix>;
}

impl<M: Matcher + ?Sized> Matcher for &M {
    fn name(&self) -> String {
        (**self).name()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        (**self).match_1d(subs, upds)
    }
}

impl<M: Matcher + ?Sized> Matcher for Box<M> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn match_1d(&self, subs: &[Interval1D], upds: &[Interval1D]) -> Result<IntersectionMatrix> {
        (**self).match_1d(subs, upds)
    }
}

/// Checks that both lists are numbered by position and carry the right kind.
pub(crate) fn check_numbering(subs: &[Interval1D], upds: &[Interval1D]) -> Result<()> {
    for (list, kind) in [(subs, Kind::Subscription), (upds, Kind::Update)] {
        for (position, iv) in list.iter().enumerate() {
            if iv.kind() != kind {
                return Err(Error::WrongKind {
                    kind: iv.kind(),
                    id: iv.id(),
                });
            }
            if iv.id() != position + 1 {
                return Err(Error::IdOutOfSequence {
                    kind,
                    position,
                    id: iv.id(),
                    expected: position + 1,
                });
            }
        }
    }
    Ok(())
}

/// Matches d-rectangles by running `matcher` along each dimension and
/// AND-ing the per-dimension matrices.
pub fn match_d<M: Matcher + ?Sized>(inst: &MatchInstance, matcher: &M) -> Result<IntersectionMatrix> {
    let mut acc: Option<IntersectionMatrix> = None;
    for dim in 0..inst.dims() {
        let (subs, upds) = inst.project(dim);
        let m = matcher.match_1d(&subs, &upds)?;
        acc = Some(match acc {
            None => m,
            Some(mut a) => {
                a.and_assign(&m)?;
                a
            }
        });
    }
    Ok(acc.expect("instances have at least one dimension"))
}
