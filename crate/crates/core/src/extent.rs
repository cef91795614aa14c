//! Intervals, d-rectangles ("extents") and the intersection predicates.
//!
//! Intervals are open at both ends as far as intersection goes: two intervals
//! that only share an endpoint do not intersect. Every matcher in this crate
//! agrees with [`intersect_1d`] exactly.

use std::cmp::Ordering;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Subscription,
    Update,
}

impl Kind {
    pub fn tag(self) -> char {
        match self {
            Kind::Subscription => 'S',
            Kind::Update => 'U',
        }
    }
}

/// One projection of an extent onto a single dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval1D {
    low: f64,
    high: f64,
    id: usize,
    kind: Kind,
}

impl Interval1D {
    pub fn new(low: f64, high: f64, id: usize, kind: Kind) -> Result<Self> {
        // Written so that NaN bounds fail too.
        if !(low < high) {
            return Err(Error::InvalidInterval { low, high });
        }
        if id == 0 {
            return Err(Error::InvalidId(id));
        }
        Ok(Self {
            low,
            high,
            id,
            kind,
        })
    }

    pub fn subscription(low: f64, high: f64, id: usize) -> Result<Self> {
        Self::new(low, high, id, Kind::Subscription)
    }

    pub fn update(low: f64, high: f64, id: usize) -> Result<Self> {
        Self::new(low, high, id, Kind::Update)
    }

    #[inline]
    pub fn low(&self) -> f64 {
        self.low
    }

    #[inline]
    pub fn high(&self) -> f64 {
        self.high
    }

    #[inline]
    pub fn id(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn kind(&self) -> Kind {
        self.kind
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.high - self.low
    }

    /// Same coordinates, different bounds.
    pub fn with_bounds(&self, low: f64, high: f64) -> Result<Self> {
        Self::new(low, high, self.id, self.kind)
    }

    /// Total order on `(low, high, id)`, the key used by the interval tree.
    #[inline]
    pub fn key_cmp(&self, other: &Self) -> Ordering {
        self.low
            .total_cmp(&other.low)
            .then_with(|| self.high.total_cmp(&other.high))
            .then_with(|| self.id.cmp(&other.id))
    }
}

/// `true` iff the two intervals share an interior point.
#[inline]
pub fn intersect_1d(x: &Interval1D, y: &Interval1D) -> bool {
    x.low < y.high && y.low < x.high
}

/// An axis-aligned d-rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Extent {
    id: usize,
    kind: Kind,
    proj: Vec<Interval1D>,
}

impl Extent {
    /// Builds an extent from one `(low, high)` pair per dimension.
    pub fn new(id: usize, kind: Kind, bounds: &[(f64, f64)]) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::ZeroDimensions);
        }
        let proj = bounds
            .iter()
            .map(|&(low, high)| Interval1D::new(low, high, id, kind))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { id, kind, proj })
    }

    pub fn from_projections(id: usize, kind: Kind, proj: Vec<Interval1D>) -> Result<Self> {
        if proj.is_empty() {
            return Err(Error::ZeroDimensions);
        }
        if id == 0 {
            return Err(Error::InvalidId(id));
        }
        if let Some(dim) = proj.iter().position(|p| p.id != id || p.kind != kind) {
            return Err(Error::ProjectionMismatch { id, dim });
        }
        Ok(Self { id, kind, proj })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn dims(&self) -> usize {
        self.proj.len()
    }

    pub fn projection(&self, dim: usize) -> &Interval1D {
        &self.proj[dim]
    }

    pub fn projections(&self) -> &[Interval1D] {
        &self.proj
    }
}

/// Two extents intersect iff their projections intersect along every dimension.
pub fn intersect_extent(s: &Extent, u: &Extent) -> Result<bool> {
    if s.dims() != u.dims() {
        return Err(Error::DimensionMismatch {
            expected: s.dims(),
            found: u.dims(),
        });
    }
    Ok(s
        .proj
        .iter()
        .zip(&u.proj)
        .all(|(a, b)| intersect_1d(a, b)))
}

/// A matching problem: `n` subscription and `m` update extents in `d` dimensions.
///
/// Position `i` of each list holds the extent with id `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchInstance {
    dims: usize,
    subscriptions: Vec<Extent>,
    updates: Vec<Extent>,
}

impl MatchInstance {
    pub fn new(dims: usize, subscriptions: Vec<Extent>, updates: Vec<Extent>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::ZeroDimensions);
        }
        for (list, kind) in [(&subscriptions, Kind::Subscription), (&updates, Kind::Update)] {
            for (position, e) in list.iter().enumerate() {
                if e.kind != kind {
                    return Err(Error::WrongKind {
                        kind: e.kind,
                        id: e.id,
                    });
                }
                if e.id != position + 1 {
                    return Err(Error::IdOutOfSequence {
                        kind,
                        position,
                        id: e.id,
                        expected: position + 1,
                    });
                }
                if e.dims() != dims {
                    return Err(Error::DimensionMismatch {
                        expected: dims,
                        found: e.dims(),
                    });
                }
            }
        }
        Ok(Self {
            dims,
            subscriptions,
            updates,
        })
    }

    /// One-dimensional instance straight from coordinate pairs.
    pub fn from_1d(subscriptions: &[(f64, f64)], updates: &[(f64, f64)]) -> Result<Self> {
        let build = |pairs: &[(f64, f64)], kind| {
            pairs
                .iter()
                .enumerate()
                .map(|(i, &b)| Extent::new(i + 1, kind, &[b]))
                .collect::<Result<Vec<_>>>()
        };
        Self::new(
            1,
            build(subscriptions, Kind::Subscription)?,
            build(updates, Kind::Update)?,
        )
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn subscriptions(&self) -> &[Extent] {
        &self.subscriptions
    }

    pub fn updates(&self) -> &[Extent] {
        &self.updates
    }

    pub fn n(&self) -> usize {
        self.subscriptions.len()
    }

    pub fn m(&self) -> usize {
        self.updates.len()
    }

    /// Projections of all subscriptions and all updates along `dim`.
    pub fn project(&self, dim: usize) -> (Vec<Interval1D>, Vec<Interval1D>) {
        let take = |list: &[Extent]| list.iter().map(|e| e.proj[dim]).collect();
        (take(&self.subscriptions), take(&self.updates))
    }
}
