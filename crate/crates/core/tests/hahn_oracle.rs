use hahn_lsq::bounds::degree_threshold;
use hahn_lsq::exact::{self, ExactParams};
use hahn_lsq::hahn::{
    endpoint_max_check, hahn_eval, hahn_eval_recurrence, hahn_grid_values, hahn_norm_sq,
    inner_product, DiscreteWeight, HahnParams,
};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn orthogonality_and_norms_sweep() {
    for &alpha in &[-0.25, 0.0, 0.5, 1.0, 2.0] {
        for &big_n in &[10usize, 50, 200] {
            let params = HahnParams::symmetric(alpha, big_n).unwrap();
            let w = DiscreteWeight::new(params).unwrap();
            let k_max = big_n.min(30);
            let q = hahn_grid_values(k_max, &params).unwrap();
            let grid_norms: Vec<f64> = q
                .iter()
                .map(|qk| inner_product(qk, qk, &w).unwrap())
                .collect();
            for k in 0..=k_max {
                let closed = hahn_norm_sq(k, &params).unwrap();
                let rel = ((closed - grid_norms[k]) / closed).abs();
                assert!(rel <= 1e-9, "α={alpha} N={big_n} k={k}: rel {rel:e}");
                for j in 0..k {
                    let cross = inner_product(&q[j], &q[k], &w).unwrap();
                    let normalized = cross.abs() / (grid_norms[j] * grid_norms[k]).sqrt();
                    assert!(
                        normalized <= 1e-9,
                        "α={alpha} N={big_n} j={j} k={k}: {normalized:e}"
                    );
                }
            }
        }
    }
}

#[test]
fn exact_norms_and_orthogonality() {
    for alpha in 0..=2u32 {
        for big_n in 1..=12usize {
            let ep = ExactParams::new(alpha, alpha, big_n);
            let w = ep.weights();
            let k_max = big_n.min(6);
            let q = ep.hahn_grid(k_max);
            for k in 0..=k_max {
                assert_eq!(exact::inner_product(&q[k], &q[k], &w), ep.norm_sq(k));
                for j in 0..k {
                    assert!(exact::inner_product(&q[j], &q[k], &w).is_zero());
                }
            }
        }
    }
}

#[test]
fn float_values_match_exact_values() {
    for (alpha, beta, big_n) in [(0u32, 0u32, 12usize), (1, 2, 9), (2, 0, 11)] {
        let ep = ExactParams::new(alpha, beta, big_n);
        let params = HahnParams::new(alpha as f64, beta as f64, big_n).unwrap();
        let q = hahn_grid_values(big_n.min(8), &params).unwrap();
        for (k, row) in q.iter().enumerate() {
            let closed = exact::to_f64(&ep.norm_sq(k));
            assert!(((hahn_norm_sq(k, &params).unwrap() - closed) / closed).abs() < 1e-13);
            for (i, &v) in row.iter().enumerate() {
                let exact_v = exact::to_f64(&ep.hahn(k, &exact::int(i as i64)));
                assert!(
                    (v - exact_v).abs() <= 1e-12 * exact_v.abs().max(1.0),
                    "k={k} i={i}"
                );
                let sum_v = hahn_eval(k, i as f64, &params).unwrap();
                assert!((sum_v - exact_v).abs() <= 1e-14 * exact_v.abs().max(1.0));
            }
        }
    }
}

#[test]
fn weight_symmetry() {
    for &alpha in &[-0.5, 0.0, 0.3, 2.0] {
        for &big_n in &[1usize, 7, 100, 1001] {
            let w = DiscreteWeight::new(HahnParams::symmetric(alpha, big_n).unwrap()).unwrap();
            let v = w.values();
            assert!((0..=big_n).all(|i| v[i] == v[big_n - i]));
        }
    }
}

#[test]
fn reflection_symmetry_on_the_grid() {
    for &alpha in &[-0.25, 0.0, 1.5] {
        for &big_n in &[9usize, 40, 200] {
            let params = HahnParams::symmetric(alpha, big_n).unwrap();
            let q = hahn_grid_values(big_n.min(30), &params).unwrap();
            for (n, row) in q.iter().enumerate() {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                for x in 0..=big_n {
                    assert!(
                        (row[big_n - x] - sign * row[x]).abs() <= 1e-10 * row[x].abs().max(1.0)
                    );
                }
            }
        }
    }
}

#[test]
fn endpoint_maximum_within_threshold() {
    for &alpha in &[0.0, 0.5, 1.0] {
        for &big_n in &[4usize, 12, 40, 100] {
            let limit = degree_threshold(alpha, big_n).unwrap().floor() as usize;
            for n in 0..=limit.min(big_n) {
                assert!(
                    endpoint_max_check(n, alpha, big_n).unwrap(),
                    "n={n} α={alpha} N={big_n}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sum_and_recurrence_agree(
        alpha in -0.9f64..4.0,
        beta in -0.9f64..4.0,
        big_n in 1usize..=10_000,
        n_frac in 0.0f64..1.0,
        x_frac in 0.0f64..1.0,
        on_grid in any::<bool>(),
    ) {
        let params = HahnParams::new(alpha, beta, big_n).unwrap();
        let n = ((n_frac * 40.0) as usize).min(big_n);
        let mut x = x_frac * big_n as f64;
        if on_grid {
            x = x.round();
        }
        let a = hahn_eval(n, x, &params).unwrap();
        let b = hahn_eval_recurrence(n, x, &params).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "n={n} x={x}: {a} vs {b}");
    }
}

#[test]
fn evaluators_agree_near_full_degree() {
    for &(alpha, beta) in &[(0.0, 0.0), (1.5, 1.5), (-0.5, 2.0)] {
        for &big_n in &[20usize, 40, 42] {
            let params = HahnParams::new(alpha, beta, big_n).unwrap();
            for n in big_n.saturating_sub(4)..=big_n.min(40) {
                for x in 0..=big_n {
                    let a = hahn_eval(n, x as f64, &params).unwrap();
                    let b = hahn_eval_recurrence(n, x as f64, &params).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                        "n={n} x={x}: {a} vs {b}"
                    );
                }
            }
        }
    }
}
