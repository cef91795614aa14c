//! Incremental maintenance of the match matrix while extents move.
//!
//! Two trees are kept, one over subscriptions and one over updates. Moving
//! update `j` re-queries the subscription tree and rewrites column `j`;
//! moving subscription `i` re-queries the update tree and rewrites row `i`.
//! The matrix equals a from-scratch brute force after every call.

use crate::error::{Error, Result};
use crate::extent::Interval1D;
use crate::interval_tree::{IntervalTree, TreeViolation};
use crate::matchers::check_numbering;
use crate::matrix::IntersectionMatrix;

#[derive(Debug, Clone)]
pub struct DynamicMatcher {
    subs: Vec<Interval1D>,
    upds: Vec<Interval1D>,
    sub_tree: IntervalTree,
    upd_tree: IntervalTree,
    matrix: IntersectionMatrix,
}

impl DynamicMatcher {
    pub fn build(subs: Vec<Interval1D>, upds: Vec<Interval1D>) -> Result<Self> {
        check_numbering(&subs, &upds)?;
        let sub_tree = IntervalTree::build(subs.iter().copied());
        let upd_tree = IntervalTree::build(upds.iter().copied());
        let mut matrix = IntersectionMatrix::new(subs.len(), upds.len());
        for (j, u) in upds.iter().enumerate() {
            sub_tree.query(u, |s| matrix.put(s.id() - 1, j));
        }
        Ok(Self {
            subs,
            upds,
            sub_tree,
            upd_tree,
            matrix,
        })
    }

    pub fn matrix(&self) -> &IntersectionMatrix {
        &self.matrix
    }

    pub fn subscriptions(&self) -> &[Interval1D] {
        &self.subs
    }

    pub fn updates(&self) -> &[Interval1D] {
        &self.upds
    }

    pub fn subscription_tree(&self) -> &IntervalTree {
        &self.sub_tree
    }

    pub fn update_tree(&self) -> &IntervalTree {
        &self.upd_tree
    }

    /// Moves/resizes update `j` (0-based) to `[low, high)` and recomputes
    /// column `j`.
    pub fn move_update(&mut self, j: usize, low: f64, high: f64) -> Result<()> {
        let old = *self.upds.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            len: self.upds.len(),
        })?;
        let new = old.with_bounds(low, high)?;
        self.upd_tree.remove(&old)?;
        self.upd_tree.insert(new);
        self.upds[j] = new;

        self.matrix.clear_column(j)?;
        let matrix = &mut self.matrix;
        self.sub_tree.query(&new, |s| matrix.put(s.id() - 1, j));
        Ok(())
    }

    /// Moves/resizes subscription `i` (0-based) to `[low, high)` and
    /// recomputes row `i`.
    pub fn move_subscription(&mut self, i: usize, low: f64, high: f64) -> Result<()> {
        let old = *self.subs.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.subs.len(),
        })?;
        let new = old.with_bounds(low, high)?;
        self.sub_tree.remove(&old)?;
        self.sub_tree.insert(new);
        self.subs[i] = new;

        self.matrix.clear_row(i)?;
        let matrix = &mut self.matrix;
        self.upd_tree.query(&new, |u| matrix.put(i, u.id() - 1));
        Ok(())
    }

    pub fn validate(&self) -> Result<(), TreeViolation> {
        self.sub_tree.validate()?;
        self.upd_tree.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchers::match_bf_1d;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn instance(seed: u64, n: usize, len: f64) -> (Vec<Interval1D>, Vec<Interval1D>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || rng.gen_range(0.0..1000.0 - len);
        let subs = (1..=n)
            .map(|id| {
                let low = pick();
                Interval1D::subscription(low, low + len, id).unwrap()
            })
            .collect();
        let upds = (1..=n)
            .map(|id| {
                let low = pick();
                Interval1D::update(low, low + len, id).unwrap()
            })
            .collect();
        (subs, upds)
    }

    fn bf(dm: &DynamicMatcher) -> IntersectionMatrix {
        match_bf_1d(dm.subscriptions(), dm.updates()).unwrap()
    }

    #[test]
    fn empty_build() {
        let dm = DynamicMatcher::build(vec![], vec![]).unwrap();
        assert_eq!((dm.matrix().rows(), dm.matrix().cols()), (0, 0));
        assert!(dm.subscription_tree().is_empty() && dm.update_tree().is_empty());
    }

    #[test]
    fn build_matches_brute_force() {
        let (s, u) = instance(1, 300, 20.0);
        let dm = DynamicMatcher::build(s, u).unwrap();
        assert_eq!(dm.matrix(), &bf(&dm));
        dm.validate().unwrap();
    }

    #[test]
    fn no_op_move_changes_nothing() {
        let (s, u) = instance(2, 50, 40.0);
        let mut dm = DynamicMatcher::build(s, u).unwrap();
        let before = dm.matrix().clone();
        let u0 = dm.updates()[3];
        dm.move_update(3, u0.low(), u0.high()).unwrap();
        let s0 = dm.subscriptions()[7];
        dm.move_subscription(7, s0.low(), s0.high()).unwrap();
        assert_eq!(dm.matrix(), &before);
    }

    #[test]
    fn move_away_and_back() {
        let (s, u) = instance(3, 50, 80.0);
        let mut dm = DynamicMatcher::build(s, u).unwrap();
        let before = dm.matrix().clone();
        let u5 = dm.updates()[5];
        dm.move_update(5, 5000.0, 5001.0).unwrap();
        assert_eq!(dm.matrix().column_count(5), 0);
        dm.move_update(5, u5.low(), u5.high()).unwrap();
        assert_eq!(dm.matrix(), &before);
    }

    #[test]
    fn subscription_covering_everything() {
        let (s, u) = instance(4, 40, 10.0);
        let mut dm = DynamicMatcher::build(s, u).unwrap();
        dm.move_subscription(0, -1.0, 2000.0).unwrap();
        assert_eq!(dm.matrix().row_ones(0).count(), 40);
        assert_eq!(dm.matrix(), &bf(&dm));
    }

    #[test]
    fn bad_index_and_interval() {
        let (s, u) = instance(5, 10, 10.0);
        let mut dm = DynamicMatcher::build(s, u).unwrap();
        assert!(matches!(
            dm.move_subscription(10, 0.0, 1.0),
            Err(Error::IndexOutOfRange { index: 10, len: 10 })
        ));
        assert!(dm.move_update(99, 0.0, 1.0).is_err());
        assert!(matches!(
            dm.move_update(0, 2.0, 1.0),
            Err(Error::InvalidInterval { .. })
        ));
        dm.validate().unwrap();
        assert_eq!(dm.matrix(), &bf(&dm));
    }

    #[test]
    fn random_moves_touch_one_line_and_stay_exact() {
        let (s, u) = instance(6, 200, 30.0);
        let mut dm = DynamicMatcher::build(s, u).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let before = dm.matrix().clone();
            let low = rng.gen_range(0.0..990.0);
            let high = low + rng.gen_range(0.5..60.0);
            let k = rng.gen_range(0..200);
            let moved_update = rng.gen_bool(0.5);
            if moved_update {
                dm.move_update(k, low, high).unwrap();
            } else {
                dm.move_subscription(k, low, high).unwrap();
            }
            let after = dm.matrix();
            assert_eq!(after, &bf(&dm));
            for (i, j) in before.pairs().into_iter().chain(after.pairs()) {
                if before.bit(i, j) != after.bit(i, j) {
                    assert_eq!(if moved_update { j } else { i }, k);
                }
            }
        }
        dm.validate().unwrap();
    }
}
