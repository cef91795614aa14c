use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamic::DynamicMatcher;
use crate::error::Result;

use super::verify::{audit, VerifyFailure};
use super::workload::WorkloadSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicReport {
    pub moves: usize,
    pub audits: usize,
    pub build_s: f64,
    pub mean_move_s: f64,
    pub k: usize,
}

/// Moves one random extent to a uniformly random position inside `span`,
/// keeping its length. Returns `(moved_update, index)`.
pub(crate) fn random_move(dm: &mut DynamicMatcher, rng: &mut ChaCha8Rng, span: (f64, f64)) -> Result<(bool, usize)> {
    let move_update = rng.gen_bool(0.5);
    let list = if move_update { dm.updates() } else { dm.subscriptions() };
    let index = rng.gen_range(0..list.len());
    let len = list[index].length();
    let low = if span.1 - len > span.0 {
        rng.gen_range(span.0..=span.1 - len)
    } else {
        span.0
    };
    if move_update {
        dm.move_update(index, low, low + len)?;
    } else {
        dm.move_subscription(index, low, low + len)?;
    }
    Ok((move_update, index))
}

/// Builds a dynamic matcher over the workload, applies `moves` random moves
/// and audits the matrix against brute force every `audit_every` moves and
/// after the last one. `audit_every == 0` audits only at the end.
pub fn run_dynamic(spec: &WorkloadSpec, moves: usize, audit_every: usize) -> Result<DynamicReport, VerifyFailure> {
    let inst = spec.generate()?;
    let (subs, upds) = inst.project(0);
    let start = Instant::now();
    let mut dm = DynamicMatcher::build(subs, upds)?;
    let build_s = start.elapsed().as_secs_f64();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9e37_79b9_7f4a_7c15);
    let can_move = inst.n() > 0 && inst.m() > 0;
    let mut audits = 0;
    let mut move_time = 0.0;
    let mut done = 0;
    if can_move {
        for step in 1..=moves {
            let t = Instant::now();
            random_move(&mut dm, &mut rng, (0.0, spec.length))?;
            move_time += t.elapsed().as_secs_f64();
            done = step;
            if audit_every > 0 && step % audit_every == 0 {
                audit(&dm, step)?;
                audits += 1;
            }
        }
    }
    if done == 0 || audit_every == 0 || done % audit_every != 0 {
        audit(&dm, done)?;
        audits += 1;
    }
    Ok(DynamicReport {
        moves: done,
        audits,
        build_s,
        mean_move_s: if done > 0 { move_time / done as f64 } else { 0.0 },
        k: dm.matrix().count_ones(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audited_run() {
        let spec = WorkloadSpec::new(500, 5.0).with_seed(11);
        let r = run_dynamic(&spec, 200, 10).unwrap();
        assert_eq!((r.moves, r.audits), (200, 20));
        let r = run_dynamic(&spec, 25, 10).unwrap();
        assert_eq!(r.audits, 3);
        let r = run_dynamic(&spec, 25, 0).unwrap();
        assert_eq!(r.audits, 1);
    }

    #[test]
    fn empty_instance_has_nothing_to_move() {
        let r = run_dynamic(&WorkloadSpec::new(0, 1.0), 10, 1).unwrap();
        assert_eq!((r.moves, r.audits, r.k), (0, 1, 0));
    }
}
