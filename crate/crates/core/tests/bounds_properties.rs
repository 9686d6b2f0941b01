use hahn_lsq::bounds::{
    alpha0_constant, degree_threshold, hypothesis_holds, min_nodes, ratio_discrete_continuous,
    simplified_constant, worst_case_constant,
};
use hahn_lsq::jacobi::continuous_constant;
use proptest::prelude::*;

const ALPHAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

#[test]
fn factorization_identity() {
    let mut checked = 0;
    for &alpha in &ALPHAS {
        for n in 0..=20usize {
            let nodes = min_nodes(n, alpha).unwrap();
            for big_n in [nodes.c3.max(n + 1), 2 * n * (n + 1), 10 * n * n] {
                if big_n == 0 || !hypothesis_holds(n, big_n, alpha).unwrap() {
                    continue;
                }
                let d = worst_case_constant(n, big_n, alpha).unwrap();
                let c = continuous_constant(n, alpha).unwrap();
                let r = ratio_discrete_continuous(n, big_n).unwrap();
                assert!(
                    ((d - c * r) / d).abs() <= 1e-12,
                    "n={n} N={big_n} α={alpha}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 200);
}

#[test]
fn worst_case_increases_towards_continuous_limit() {
    for &alpha in &ALPHAS {
        for n in 0..=20usize {
            let c = continuous_constant(n, alpha).unwrap();
            let start = min_nodes(n, alpha).unwrap().c3.max(n + 1);
            let mut prev = 0.0;
            let mut grid = vec![
                start,
                start + 1,
                2 * start,
                10 * start,
                1000,
                10_000,
                100_000,
                1_000_000,
            ];
            grid.sort_unstable();
            grid.dedup();
            for big_n in grid {
                let d = worst_case_constant(n, big_n, alpha).unwrap();
                assert!(
                    d <= c * (1.0 + 1e-13),
                    "n={n} α={alpha} N={big_n}: {d} > {c}"
                );
                if n > 0 {
                    assert!(d > prev, "n={n} α={alpha} N={big_n}");
                }
                prev = d;
            }
            // Absolute: the relative gap is n(n+1)/(2N), about 2e-4 at n = 20.
            assert!((c - prev).abs() <= 1e-6, "n={n} α={alpha}: {}", c - prev);
        }
    }
}

#[test]
fn min_nodes_satisfy_the_hypothesis() {
    for &alpha in &[-0.25, 0.0, 0.5, 1.0, 2.0, 3.7] {
        for n in 0..=60usize {
            let nodes = min_nodes(n, alpha).unwrap();
            assert!(degree_threshold(alpha, nodes.c3).unwrap() >= (n + 1) as f64 - 1e-12);
            if nodes.c4_applicable {
                assert!(degree_threshold(alpha, nodes.c4).unwrap() >= (n + 1) as f64 - 1e-12);
            }
        }
    }
}

#[test]
fn alpha0_sandwich() {
    for n in 0..=200 {
        assert!(alpha0_constant(n).sandwich_holds(), "n = {n}");
    }
}

#[test]
fn asymptotic_constant() {
    // n·|D(n, 10n³, α)/simplified(n, α) - 1| at n = 10 and n = 40, from a
    // 40-digit reference evaluation, and the pinned K for n in [10, 40].
    let table = [
        (0.0, 0.5497059742534778, 0.5685521269695596, 0.6),
        (0.5, 1.9341581823892193, 1.9462208252245663, 2.0),
        (1.0, 4.310905495509066, 4.136629603197003, 4.5),
        (2.0, 14.04232123245523, 11.406192126076508, 15.0),
    ];
    for (alpha, at10, at40, k) in table {
        let scaled = |n: usize| {
            let d = worst_case_constant(n, 10 * n * n * n, alpha).unwrap();
            n as f64 * (d / simplified_constant(n, alpha).unwrap() - 1.0).abs()
        };
        assert!((scaled(10) - at10).abs() < 1e-9 * at10);
        assert!((scaled(40) - at40).abs() < 1e-9 * at40);
        for n in 10..=40 {
            assert!(scaled(n) <= k, "α={alpha} n={n}: {}", scaled(n));
        }
    }
}

proptest! {
    #[test]
    fn threshold_check_is_exact(alpha in -0.49f64..4.0, big_n in 1usize..5_000, n in 0usize..100) {
        let ok = hypothesis_holds(n, big_n, alpha).unwrap();
        prop_assert_eq!(ok, (n + 1) as f64 <= degree_threshold(alpha, big_n).unwrap());
        prop_assert_eq!(worst_case_constant(n, big_n, alpha).is_ok(), ok && n < big_n);
    }
}
