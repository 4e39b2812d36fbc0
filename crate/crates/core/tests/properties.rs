use proptest::prelude::*;

use zappl::costmodel::{n_mult_separate, n_mult_separate_enumerated};
use zappl::transform::{
    dehierarchize, hierarchize, verify_chop_identity, CoeffVector, ValueVector,
};
use zappl::{build_zappl, make_leja_points, BasisFamily, Interpolant, SimplexIndexSet, Zappl1D};

fn leja_axis(n: usize) -> Zappl1D {
    let fam = BasisFamily::chebyshev();
    build_zappl(&fam, &make_leja_points(&fam, n, 0.0).unwrap(), n).unwrap()
}

fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// (dim, budget) with a random vector sized to the set.
fn set_and_values(
    max_dim: usize,
    max_budget: usize,
) -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
    (1..=max_dim, 0..=max_budget).prop_flat_map(|(d, b)| {
        let n = zappl::index_set::size(d, b).unwrap();
        (Just(d), Just(b), prop::collection::vec(-1e3..1e3_f64, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_unrank_bijection(d in 1usize..8, b in 0usize..8, pick in any::<prop::sample::Index>()) {
        let set = SimplexIndexSet::new(d, b).unwrap();
        let off = pick.index(set.len());
        let idx = set.unrank(off).unwrap();
        prop_assert_eq!(set.rank(idx.entries()).unwrap(), off);
        prop_assert!(idx.level_sum() <= b);
        if off > 0 {
            let prev = set.unrank(off - 1).unwrap();
            prop_assert!(prev.level_sum() <= idx.level_sum());
        }
    }

    #[test]
    fn round_trip((d, b, u) in set_and_values(4, 6)) {
        let ax = vec![leja_axis(b + 1); d];
        let set = SimplexIndexSet::new(d, b).unwrap();
        let c = hierarchize(&ValueVector(u.clone()), &ax, &set, None).unwrap();
        let back = dehierarchize(&c, &ax, &set).unwrap();
        let scale = max_abs(&u).max(f64::MIN_POSITIVE);
        for (x, y) in back.0.iter().zip(&u) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn linearity((d, b, u) in set_and_values(4, 6), alpha in -3.0..3.0_f64, beta in -3.0..3.0_f64, seed in any::<u64>()) {
        let ax = vec![leja_axis(b + 1); d];
        let set = SimplexIndexSet::new(d, b).unwrap();
        let v: Vec<f64> = (0..u.len()).map(|k| ((seed.wrapping_add(k as u64) % 1000) as f64) - 500.0).collect();
        let w: Vec<f64> = u.iter().zip(&v).map(|(a, c)| alpha * a + beta * c).collect();
        let h = |x: &[f64]| hierarchize(&ValueVector(x.to_vec()), &ax, &set, None).unwrap().0;
        let (cu, cv, cw) = (h(&u), h(&v), h(&w));
        let scale = (alpha.abs() * max_abs(&cu) + beta.abs() * max_abs(&cv)).max(1.0);
        for k in 0..cw.len() {
            prop_assert!((cw[k] - alpha * cu[k] - beta * cv[k]).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn coefficient_csv_round_trip((d, b, u) in set_and_values(3, 5)) {
        let set = SimplexIndexSet::new(d, b).unwrap();
        let c = CoeffVector(u);
        let mut buf = Vec::new();
        c.write_csv(&set, &mut buf).unwrap();
        prop_assert_eq!(CoeffVector::read_csv(&set, buf.as_slice()).unwrap(), c);
    }

    #[test]
    fn zero_at_previous_points(n in 1usize..40) {
        let z = leja_axis(n);
        let tol = 1e-10 * z.a().max_row_norm();
        let r = z.points().points();
        for i in 1..=n {
            for &x in &r[..i - 1] {
                prop_assert!(z.eval(i, x).unwrap().abs() <= tol);
            }
        }
        // Binv B = I
        for row in 0..n {
            for col in 0..=row {
                let s: f64 = (col..=row).map(|j| z.binv().get(row, j) * z.b().get(j, col)).sum();
                let want = if row == col { 1.0 } else { 0.0 };
                prop_assert!((s - want).abs() <= 1e-12 * z.binv().max_abs().max(1.0));
            }
        }
    }

    #[test]
    fn lagrange_span_reproduction(m in 1usize..16, coeffs in prop::collection::vec(-1.0..1.0_f64, 16), xs in prop::collection::vec(-1.0..=1.0_f64, 20)) {
        let z = leja_axis(16);
        let fam = *z.family();
        let p = |x: f64| (1..=m).map(|j| coeffs[j - 1] * fam.eval(j, x)).sum::<f64>();
        let r = z.points().points();
        let scale = coeffs[..m].iter().map(|c| c.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
        for &x in &xs {
            let interp: f64 = (1..=m).map(|a| p(r[a - 1]) * z.lagrange_type_level(m, a, x).unwrap()).sum();
            prop_assert!((interp - p(x)).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn interpolant_hits_nodes((d, b, u) in set_and_values(4, 5)) {
        let ax = vec![leja_axis(b + 1); d];
        let set = SimplexIndexSet::new(d, b).unwrap();
        let itp = Interpolant::fit(&ValueVector(u.clone()), ax.clone(), set.clone(), None).unwrap();
        let scale = max_abs(&u).max(f64::MIN_POSITIVE);
        for (off, idx) in set.iter().enumerate() {
            let x: Vec<f64> = idx.iter().zip(&ax).map(|(&i, z)| z.points().points()[i - 1]).collect();
            prop_assert!((itp.eval(&x).unwrap() - u[off]).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn chop_identity_small(d in 1usize..5, b in 0usize..5) {
        prop_assume!((b + 1).pow(d as u32) <= 4096);
        let rep = verify_chop_identity(&vec![leja_axis(b + 1); d], d, b).unwrap();
        prop_assert!(rep.passes(1e-12), "{:?}", rep);
    }

    #[test]
    fn separate_grid_count_matches_enumeration(d in 1usize..7, b in 0usize..8, e in 1u32..4) {
        prop_assert_eq!(n_mult_separate(d, b, e).unwrap(), n_mult_separate_enumerated(d, b, e).unwrap());
    }
}
