#![allow(dead_code)]

use ddm_core::{Extent, IntersectionMatrix, Kind, MatchInstance};

/// Pairwise oracle: tests every (S_i, U_j) with its own strict comparison
/// over all dimensions, independent of the library's predicates.
pub fn pairwise_oracle(inst: &MatchInstance) -> IntersectionMatrix {
    let mut pairs = Vec::new();
    for (i, s) in inst.subscriptions().iter().enumerate() {
        for (j, u) in inst.updates().iter().enumerate() {
            let hit = s
                .projections()
                .iter()
                .zip(u.projections())
                .all(|(a, b)| a.low() < b.high() && b.low() < a.high());
            if hit {
                pairs.push((i, j));
            }
        }
    }
    IntersectionMatrix::from_pairs(inst.n(), inst.m(), pairs).unwrap()
}

/// Linear-scan count of intervals strictly overlapping `[lo, hi)`.
pub fn linear_count(items: &[(f64, f64)], lo: f64, hi: f64) -> usize {
    items.iter().filter(|&&(a, b)| a < hi && lo < b).count()
}

/// Instance realizing the overlaps of the two-dimensional example with three
/// subscriptions and two updates: U1 meets S1 and S3, U2 meets S2 and S3,
/// and S1/U2 overlap along x only.
pub fn figure_one() -> MatchInstance {
    let s = |id, x: (f64, f64), y: (f64, f64)| Extent::new(id, Kind::Subscription, &[x, y]).unwrap();
    let u = |id, x: (f64, f64), y: (f64, f64)| Extent::new(id, Kind::Update, &[x, y]).unwrap();
    MatchInstance::new(
        2,
        vec![
            s(1, (0.0, 4.0), (6.0, 10.0)),
            s(2, (6.0, 10.0), (0.0, 4.0)),
            s(3, (2.0, 8.0), (2.0, 8.0)),
        ],
        vec![u(1, (1.0, 3.0), (5.0, 9.0)), u(2, (3.0, 9.0), (1.0, 5.0))],
    )
    .unwrap()
}
