//! Property tests against independent oracles: box searches for hull positions,
//! gcd of minors for saturation, and algebraic identities of the projections,
//! exponents and Kuranishi map.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torus_strata::exact_geometry::{format_q, parse_q, qr, saturated_kernel, QMat, QVec};
use torus_strata::graded_kuranishi::{
    green_identity_residual, kuranishi_forward, kuranishi_inverse_graded, nilpotent_triangular,
    obstruction_identity_residual, random_complex, random_slice_vector, RandomComplexParams,
};
use torus_strata::stability::{classify_weights, Stability};
use torus_strata::torus_rep::{RepVector, Representation, WeightLine};

fn normals(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&c| c != 0));
    out
}

/// Classification by scanning every integer normal in a box. The bound is large
/// enough that extreme rays of the dual cone, and sums of two of them, are found.
fn box_oracle(rank: usize, weights: &[Vec<i64>], bound: i64) -> Stability {
    let pair = |w: &[i64], n: &[i64]| -> i64 { w.iter().zip(n).map(|(a, b)| a * b).sum() };
    let mut any_nonneg = false;
    let mut any_nonneg_nonflat = false;
    for n in normals(rank, bound) {
        let p: Vec<i64> = weights.iter().map(|w| pair(w, &n)).collect();
        if p.iter().all(|&x| x > 0) {
            return Stability::Unstable;
        }
        if p.iter().all(|&x| x >= 0) {
            any_nonneg = true;
            any_nonneg_nonflat |= p.iter().any(|&x| x > 0);
        }
    }
    match (any_nonneg, any_nonneg_nonflat) {
        (false, _) => Stability::Stable,
        (true, false) => Stability::PolystableNotStable,
        (true, true) => Stability::SemistableNotPolystable,
    }
}

fn weight_set(rank: usize, entry: i64, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-entry..=entry, rank), 1..=max).prop_map(|ws| {
        ws.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
    })
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn choose(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut out = choose(n - 1, r);
    for mut c in choose(n - 1, r - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn graded_vector(rank: usize) -> impl Strategy<Value = RepVector> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, rank), 1i64..=3, -1.0f64..1.0, -1.0f64..1.0),
        1..=6,
    )
    .prop_map(move |ls| {
        let lines: Vec<WeightLine> = ls
            .iter()
            .enumerate()
            .map(|(i, (w, r, _, _))| WeightLine::graded(format!("l{i}"), w.clone(), *r))
            .collect();
        let amps = ls.iter().map(|&(_, _, re, im)| Complex64::new(re, im)).collect();
        RepVector::new(Arc::new(Representation::new(rank, lines).unwrap()), amps).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_matches_box_scan_rank_2(ws in weight_set(2, 3, 6)) {
        let c = classify_weights(2, &ws).unwrap();
        prop_assert!(c.verify());
        prop_assert_eq!(c.class, box_oracle(2, &ws, 8));
    }

    #[test]
    fn classification_matches_box_scan_rank_3(ws in weight_set(3, 2, 6)) {
        let c = classify_weights(3, &ws).unwrap();
        prop_assert!(c.verify());
        prop_assert_eq!(c.class, box_oracle(3, &ws, 16));
    }

    #[test]
    fn kernel_is_saturated_with_the_right_rank(
        dim in 1usize..=4,
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 0..=3),
    ) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..dim].to_vec()).collect();
        let k = saturated_kernel(dim, &rows).unwrap();
        let rank = if rows.is_empty() { 0 } else { QMat::from_i64_rows(&rows, dim).unwrap().rank() };
        prop_assert_eq!(k.rank(), dim - rank);
        for b in k.basis() {
            for r in &rows {
                prop_assert_eq!(r.iter().zip(b).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
        }
        if k.rank() > 0 {
            // a basis spans a saturated lattice iff its maximal minors are coprime
            let g = choose(dim, k.rank()).into_iter().fold(0i128, |g, cols| {
                let m: Vec<Vec<i128>> = k
                    .basis()
                    .iter()
                    .map(|b| cols.iter().map(|&c| i128::from(b[c])).collect())
                    .collect();
                gcd(g, det(&m))
            });
            prop_assert_eq!(g, 1);
        }
    }

    #[test]
    fn lattice_lift_and_restrict_are_adjoint(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=2),
        w in prop::collection::vec(-5i64..=5, 3),
        y in prop::collection::vec(-5i64..=5, 3),
    ) {
        let k = saturated_kernel(3, &rows).unwrap();
        let y = &y[..k.rank()];
        let lhs: i64 = k.restrict(&w).iter().zip(y).map(|(a, b)| a * b).sum();
        let rhs: i64 = w.iter().zip(k.lift(y)).map(|(a, b)| a * b).sum();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(k.contains(&k.lift(y)));
    }

    #[test]
    fn rationals_round_trip_through_strings(n in -1000i64..1000, d in 1i64..1000) {
        let x = qr(n, d);
        prop_assert_eq!(parse_q(&format_q(&x)), Some(x));
    }

    #[test]
    fn projections_are_idempotent_and_complementary(u in graded_vector(2), mask in any::<u8>()) {
        let ws: Vec<_> = u.effective_weights().into_iter().collect();
        let s: BTreeSet<_> = ws.iter().enumerate().filter(|(i, _)| mask >> (i % 8) & 1 == 1).map(|(_, w)| w.clone()).collect();
        let p = u.project(&s);
        prop_assert_eq!(p.project(&s), p.clone());
        let rest: BTreeSet<_> = ws.into_iter().filter(|w| !s.contains(w)).collect();
        let q = u.project(&rest);
        for ((a, b), c) in p.amplitudes().iter().zip(q.amplitudes()).zip(u.amplitudes()) {
            prop_assert_eq!(a + b, *c);
        }
        prop_assert!((p.norm_sqr() + q.norm_sqr() - u.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn fixed_part_is_fixed(u in graded_vector(3), rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=2)) {
        let h = saturated_kernel(3, &rows).unwrap();
        let f = u.fixed_part(&h).unwrap();
        for w in f.effective_g_weights() {
            prop_assert!(h.restrict(&w).iter().all(|&p| p == 0));
        }
        prop_assert_eq!(f.fixed_part(&h).unwrap(), f);
    }

    #[test]
    fn exponents_are_additive(
        u in graded_vector(2),
        x1 in prop::collection::vec(-4i64..=4, 2),
        x2 in prop::collection::vec(-4i64..=4, 2),
        s1 in 0i64..4,
        s2 in 0i64..4,
    ) {
        let sum: Vec<i64> = x1.iter().zip(&x2).map(|(a, b)| a + b).collect();
        let e = |x: &[i64], s| u.exponents_by_line(&QVec::from_i64(x), s).unwrap();
        let (a, b, c) = (e(&x1, s1), e(&x2, s2), e(&sum, s1 + s2));
        for i in 0..c.len() {
            prop_assert_eq!(c[i], a[i].zip(b[i]).map(|(p, q)| p + q));
        }
    }

    #[test]
    fn kuranishi_round_trip_and_scaling(seed in any::<u64>(), t in 0.2f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = random_complex(&mut rng, &RandomComplexParams::default());
        prop_assert!(green_identity_residual(&cx) < 1e-9);
        let x = random_slice_vector(&mut rng, &cx);
        let u = kuranishi_inverse_graded(&cx, &x).unwrap();
        let back = kuranishi_forward(&cx, &u).unwrap();
        prop_assert!(back.sub(&x).norm() <= 1e-9 * (1.0 + x.norm()));
        prop_assert!(obstruction_identity_residual(&cx, &u).unwrap() < 1e-9);
        let t = Complex64::new(t, 0.0);
        let lhs = kuranishi_forward(&cx, &u.scaled(t)).unwrap();
        let rhs = back.scaled(t);
        prop_assert!(lhs.sub(&rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn nilpotent_complexes_round_trip(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = nilpotent_triangular(&mut rng, n);
        let x = random_slice_vector(&mut rng, &cx);
        let u = kuranishi_inverse_graded(&cx, &x).unwrap();
        let back = kuranishi_forward(&cx, &u).unwrap();
        prop_assert!(back.sub(&x).norm() <= 1e-9 * (1.0 + x.norm()));
    }
}
