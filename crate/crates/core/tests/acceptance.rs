//! Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
//! non-zero if any criterion fails.
//!
//! `ACCEPTANCE_ONLY=1,3` runs a subset.

mod common;

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use ddm_core::bench::{run_bench, Algorithm, BenchOptions, WorkloadSpec};
use ddm_core::{
    match_bf_1d, match_d, match_gb_1d, match_itm_1d, match_itm_parallel, match_sbm_1d, BitsIndex, BruteForce,
    DynamicMatcher, GridBased, GridConfig, Interval1D, IntersectionMatrix, IntervalTree, IntervalTreeMatching,
    Matcher, ParallelBruteForce, ParallelConfig, ParallelItm, SortBased,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone)]
enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn() -> Outcome;

fn pass(s: impl Into<String>) -> Outcome {
    Outcome::Pass(s.into())
}

fn fail(s: impl Into<String>) -> Outcome {
    Outcome::Fail(s.into())
}

const SIZES: [usize; 3] = [200, 2_000, 20_000];
const ALPHAS: [f64; 3] = [0.01, 1.0, 100.0];
const SEEDS: u64 = 100;

/// Criteria 1 and 2 share one sweep over the same instances.
fn oracle_sweep() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut instances = 0;
    let mut total_k = 0usize;
    let mut columns = 0usize;
    let mut mismatch: Option<String> = None;
    let mut miscount: Option<String> = None;
    for &n in &SIZES {
        for &alpha in &ALPHAS {
            for seed in 0..SEEDS {
                let spec = WorkloadSpec::new(n, alpha).with_seed(seed);
                let inst = spec.generate().expect("valid workload");
                let (s, u) = inst.project(0);
                let bf = match_bf_1d(&s, &u).unwrap();
                total_k += bf.count_ones();
                instances += 1;

                let span = (0.0, spec.length);
                let grid = |g| GridConfig::new(g, span.0, span.1).unwrap();
                let par = |p| ParallelConfig::new(p).unwrap();
                let results: Vec<(&str, IntersectionMatrix)> = vec![
                    ("sbm", match_sbm_1d(&s, &u).unwrap()),
                    ("gb G=1", match_gb_1d(&s, &u, &grid(1)).unwrap()),
                    ("gb G=64", match_gb_1d(&s, &u, &grid(64)).unwrap()),
                    ("itm", match_itm_1d(&s, &u).unwrap()),
                    ("itm-par p=1", match_itm_parallel(&s, &u, &par(1)).unwrap()),
                    ("itm-par p=2", match_itm_parallel(&s, &u, &par(2)).unwrap()),
                    ("itm-par p=8", match_itm_parallel(&s, &u, &par(8)).unwrap()),
                ];
                let at = format!("N={n} alpha={alpha} seed={seed}");

                for (name, m) in &results {
                    if let Some((i, j)) = bf.first_difference(m).unwrap() {
                        mismatch.get_or_insert(format!("{name} differs from bf at ({},{}) for {at}", i + 1, j + 1));
                    }
                }

                let index = BitsIndex::new(&s);
                for (j, q) in u.iter().enumerate() {
                    let want = index.count(q);
                    columns += 1;
                    for (name, m) in std::iter::once(("bf", &bf)).chain(results.iter().map(|(n, m)| (*n, m))) {
                        let got = m.column_count(j);
                        if got != want {
                            miscount.get_or_insert(format!(
                                "{name} column {} has {got} bits, binary search counts {want} ({at})",
                                j + 1
                            ));
                        }
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let first = match mismatch {
        None => pass(format!("{instances} instances, total K={total_k}, {secs:.1}s shared with 2")),
        Some(m) => fail(m),
    };
    let second = match miscount {
        None => pass(format!("{columns} columns x 8 matrices")),
        Some(m) => fail(m),
    };
    (first, second)
}

static SWEEP: OnceLock<(Outcome, Outcome)> = OnceLock::new();

fn criterion_1() -> Outcome {
    SWEEP.get_or_init(oracle_sweep).0.clone()
}

fn criterion_2() -> Outcome {
    SWEEP.get_or_init(oracle_sweep).1.clone()
}

fn criterion_3() -> Outcome {
    let inst = common::figure_one();
    let expected = IntersectionMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]).unwrap();
    let p2 = ParallelConfig::new(2).unwrap();
    let matchers: Vec<Box<dyn Matcher>> = vec![
        Box::new(BruteForce),
        Box::new(SortBased),
        Box::new(GridBased::new(GridConfig::new(4, 0.0, 10.0).unwrap())),
        Box::new(IntervalTreeMatching),
        Box::new(ParallelItm { config: p2 }),
        Box::new(ParallelBruteForce { config: p2 }),
    ];
    for m in &matchers {
        let got = match_d(&inst, m).unwrap();
        if got != expected {
            return fail(format!("{} produced {:?}", m.name(), got.to_dense()));
        }
    }
    pass("M = [[1,0],[0,1],[1,1]] from all matchers")
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tree = IntervalTree::new();
    let mut stored: Vec<Interval1D> = Vec::new();
    let mut violations = 0;
    let mut first = None;
    let mut max_height = 0;
    for op in 1..=10_000usize {
        if !stored.is_empty() && rng.gen_bool(0.45) {
            let iv = stored.swap_remove(rng.gen_range(0..stored.len()));
            if tree.remove(&iv).is_err() {
                return fail(format!("delete of a stored interval failed at op {op}"));
            }
        } else {
            // Integer lattice: many equal lower bounds and exact duplicates.
            let low = rng.gen_range(0..500) as f64;
            let iv = Interval1D::subscription(low, low + rng.gen_range(1..30) as f64, op).unwrap();
            tree.insert(iv);
            stored.push(iv);
        }
        max_height = max_height.max(tree.height());
        if let Err(v) = tree.validate() {
            violations += 1;
            first.get_or_insert(format!("op {op}: {v}"));
        }
    }
    match first {
        None => pass(format!("10000 ops, final size {}, max height {max_height}", tree.len())),
        Some(f) => fail(format!("{violations} violations, first at {f}")),
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let spec = WorkloadSpec::new(500, 1.0).with_seed(5);
    let inst = spec.generate().unwrap();
    let (s, u) = inst.project(0);
    let mut dm = DynamicMatcher::build(s, u).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let l = spec.extent_length();
    for step in 1..=1000 {
        let low = rng.gen_range(0.0..=spec.length - l);
        let k = rng.gen_range(0..250);
        if rng.gen_bool(0.5) {
            dm.move_update(k, low, low + l).unwrap();
        } else {
            dm.move_subscription(k, low, low + l).unwrap();
        }
        let fresh = match_bf_1d(dm.subscriptions(), dm.updates()).unwrap();
        if let Some((i, j)) = fresh.first_difference(dm.matrix()).unwrap() {
            return fail(format!("after move {step} differs at ({},{})", i + 1, j + 1));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return fail(format!("took {:.1}s, limit 30s", elapsed.as_secs_f64()));
    }
    pass(format!(
        "1000 moves audited, final K={}, {:.2}s",
        dm.matrix().count_ones(),
        elapsed.as_secs_f64()
    ))
}

fn mean_time(spec: &WorkloadSpec, algo: Algorithm, threads: usize, reps: usize) -> (f64, usize) {
    let opts = BenchOptions {
        threads,
        reps,
        ..Default::default()
    };
    let r = run_bench(spec, algo, &opts).expect("benchmark runs");
    (r.mean, r.k())
}

fn criterion_6() -> Outcome {
    let spec = WorkloadSpec::new(100_000, 1.0).with_seed(6);
    let (bf, k_bf) = mean_time(&spec, Algorithm::Bf, 1, 3);
    let (sbm, k_sbm) = mean_time(&spec, Algorithm::Sbm, 1, 3);
    let (itm, k_itm) = mean_time(&spec, Algorithm::Itm, 1, 3);
    let detail = format!(
        "bf {bf:.3}s, sbm {sbm:.3}s ({:.1}x), itm {itm:.3}s ({:.1}x), K={k_bf}",
        bf / sbm,
        bf / itm
    );
    if k_bf != k_sbm || k_bf != k_itm {
        return fail(format!("K differs: bf {k_bf}, sbm {k_sbm}, itm {k_itm}"));
    }
    if bf >= 5.0 * sbm && bf >= 5.0 * itm {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_7() -> Outcome {
    let physical = num_cpus::get_physical();
    if physical < 4 {
        return Outcome::Skip(format!(
            "needs >= 4 physical cores, this machine has {physical}; determinism at p in {{1,2,8}} is covered by criterion 1"
        ));
    }
    let spec = WorkloadSpec::new(500_000, 100.0).with_seed(7);
    let (t1, k1) = mean_time(&spec, Algorithm::ItmPar, 1, 3);
    let (t2, k2) = mean_time(&spec, Algorithm::ItmPar, 2, 3);
    let (t4, k4) = mean_time(&spec, Algorithm::ItmPar, 4, 3);
    if k1 != k2 || k1 != k4 {
        return fail(format!("K differs across p: {k1} {k2} {k4}"));
    }
    let (s2, s4) = (t1 / t2, t1 / t4);
    let detail = format!("p=1 {t1:.3}s, speedup p=2 {s2:.2}, p=4 {s4:.2}");
    if s4 >= 2.0 && s4 >= s2 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_8() -> Outcome {
    let times: Vec<(f64, f64, usize)> = ALPHAS
        .iter()
        .map(|&alpha| {
            let spec = WorkloadSpec::new(200_000, alpha).with_seed(8);
            let (t, k) = mean_time(&spec, Algorithm::Itm, 1, 3);
            (alpha, t, k)
        })
        .collect();
    let detail = times
        .iter()
        .map(|(a, t, k)| format!("alpha={a}: {t:.3}s K={k}"))
        .collect::<Vec<_>>()
        .join(", ");
    if times.windows(2).all(|w| w[0].1 <= w[1].1) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, Check); 8] = [
        (1, "oracle equivalence (SBM, GB, ITM, parallel ITM vs BF)", criterion_1),
        (2, "column popcount equals binary-search count", criterion_2),
        (3, "two-dimensional example matrix", criterion_3),
        (4, "AVL structure under 10^4 random insert/delete", criterion_4),
        (5, "dynamic maintenance, 1000 audited moves", criterion_5),
        (6, "sequential ordering: SBM and ITM >= 5x faster than BF", criterion_6),
        (7, "parallel ITM speedup at p=4", criterion_7),
        (8, "ITM time nondecreasing in alpha", criterion_8),
    ];
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());

    let mut failed = 0;
    for (id, name, check) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let line = match check() {
            Outcome::Pass(d) => format!("[PASS] {id}. {name}: {d}"),
            Outcome::Skip(d) => format!("[SKIP] {id}. {name}: {d}"),
            Outcome::Fail(d) => {
                failed += 1;
                format!("[FAIL] {id}. {name}: {d}")
            }
        };
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
