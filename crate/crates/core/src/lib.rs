//! Intersection matching between two sets of axis-aligned d-rectangles
//! ("subscription" and "update" extents), as used for data distribution
//! management in distributed simulation.
//!
//! The result of a match is an `n x m` bit matrix: bit `(i, j)` is set iff
//! subscription `i + 1` and update `j + 1` share an interior point. Four
//! exact one-dimensional algorithms are provided (brute force, sort-based,
//! grid-based and interval-tree matching), each lifted to `d` dimensions by
//! [`match_d`], plus fork-join parallel variants, incremental maintenance
//! under moving extents, and a benchmark harness.
//!
//! ```
//! use ddm_core::{match_d, IntervalTreeMatching, MatchInstance};
//!
//! let inst = MatchInstance::from_1d(&[(0.0, 2.0), (5.0, 7.0)], &[(1.0, 6.0)]).unwrap();
//! let m = match_d(&inst, &IntervalTreeMatching).unwrap();
//! assert_eq!(m.to_dense(), vec![vec![1], vec![1]]);
//! ```

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
mod bitset;
pub mod dynamic;
mod error;
mod extent;
pub mod interval_tree;
pub mod io;
pub mod matchers;
mod matrix;
pub mod parallel;

pub use bitset::BitVector;
pub use dynamic::DynamicMatcher;
pub use error::{Error, Result};
pub use extent::{intersect_1d, intersect_extent, Extent, Interval1D, Kind, MatchInstance};
pub use interval_tree::IntervalTree;
pub use matchers::{
    bits_count, match_bf_1d, match_d, match_gb_1d, match_itm_1d, match_sbm_1d, BitsIndex, BruteForce, GridBased,
    GridConfig, IntervalTreeMatching, Matcher, SortBased,
};
pub use matrix::{ColumnBlock, IntersectionMatrix};
pub use parallel::{match_bf_parallel, match_itm_parallel, ParallelBruteForce, ParallelConfig, ParallelItm};
