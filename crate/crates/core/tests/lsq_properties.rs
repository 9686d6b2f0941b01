use hahn_lsq::bounds::{hypothesis_holds, worst_case_constant};
use hahn_lsq::exact::{self, ExactParams};
use hahn_lsq::hahn::HahnParams;
use hahn_lsq::lsq::{
    extremal_function, fit_hahn, fit_normal_equations, fit_normal_equations_exact, fit_samples,
    hahn_projection_rational, monomial_grid_values, normal_equations_rational, sample, sup_error,
    Approximant,
};
use hahn_lsq::FunctionSpec;
use proptest::prelude::*;

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_degree + 1)
}

fn alpha_strategy() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![0.0, 0.5, 1.0])
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.len(), b.len());
    for (k, (x, y)) in a.iter().zip(b).enumerate() {
        prop_assert!(
            (x - y).abs() <= tol * x.abs().max(1.0),
            "k={}: {} vs {}",
            k,
            x,
            y
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fit_reproduces_polynomials(
        coeffs in poly_strategy(10),
        extra in 0usize..3,
        wide in any::<bool>(),
        alpha in alpha_strategy(),
    ) {
        let n = (coeffs.len() - 1 + extra).clamp(1, 10);
        let big_n = if wide { 2 * n * (n + 1) } else { 2 * n };
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>().max(1e-300);
        let f = FunctionSpec::polynomial("p", coeffs);
        let params = HahnParams::symmetric(alpha, big_n).unwrap();
        let fit = fit_hahn(&f, n, &params).unwrap();
        let report = sup_error(&f, &fit);
        prop_assert!(report.sup_error <= 1e-9 * scale, "{:e}", report.sup_error);
    }

    #[test]
    fn fitting_an_approximant_is_idempotent(
        n in 1usize..=10,
        extra in 0usize..40,
        alpha in -0.4f64..2.0,
        which in 0usize..3,
    ) {
        let big_n = n + extra;
        let params = HahnParams::symmetric(alpha, big_n).unwrap();
        let f = [FunctionSpec::exp(), FunctionSpec::sin(4.0), FunctionSpec::runge()][which].clone();
        let first = fit_hahn(&f, n, &params).unwrap();
        let again = fit_samples(&first.grid_values(), n, &params).unwrap();
        assert_close(&first.coefficients, &again.coefficients, 1e-10)?;
    }

    #[test]
    fn fit_is_linear(
        n in 1usize..=10,
        extra in 0usize..40,
        alpha in alpha_strategy(),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let big_n = n + extra;
        let params = HahnParams::symmetric(alpha, big_n).unwrap();
        let f = FunctionSpec::exp();
        let g = FunctionSpec::runge();
        let (fc, gc) = (f.clone(), g.clone());
        let combo = FunctionSpec::new("combo", move |t| a * fc.eval(t) + b * gc.eval(t));
        let lhs = fit_hahn(&combo, n, &params).unwrap().coefficients;
        let fa = fit_hahn(&f, n, &params).unwrap().coefficients;
        let ga = fit_hahn(&g, n, &params).unwrap().coefficients;
        let rhs: Vec<f64> = fa.iter().zip(&ga).map(|(x, y)| a * x + b * y).collect();
        assert_close(&lhs, &rhs, 1e-10)?;
    }

    #[test]
    fn normal_equations_agree_with_hahn_fit(
        coeffs in poly_strategy(6),
        n in 0usize..=6,
        big_n in 1usize..=12,
        alpha in prop::sample::select(vec![0.0, 1.0]),
        add_exp in any::<bool>(),
    ) {
        let n = n.min(big_n);
        let p = FunctionSpec::polynomial("p", coeffs);
        let f = if add_exp {
            let pc = p.clone();
            FunctionSpec::new("p+exp", move |t| pc.eval(t) + t.exp())
        } else {
            p
        };
        let params = HahnParams::symmetric(alpha, big_n).unwrap();
        let a = fit_hahn(&f, n, &params).unwrap();
        let b = fit_normal_equations(&f, n, &params).unwrap();
        let c = fit_normal_equations_exact(&f, n, &params).unwrap();
        assert_close(&a.coefficients, &b.coefficients, 1e-9)?;
        assert_close(&a.coefficients, &c.coefficients, 1e-12)?;
    }
}

/// In rational arithmetic the Hahn projection and the monomial normal
/// equations give identical least-squares polynomials.
#[test]
fn exact_projection_equals_exact_normal_equations() {
    for alpha in 0..=2u32 {
        for big_n in 1..=12usize {
            let ep = ExactParams::new(alpha, alpha, big_n);
            let params = HahnParams::symmetric(alpha as f64, big_n).unwrap();
            let samples: Vec<_> = sample(&FunctionSpec::exp(), big_n)
                .unwrap()
                .into_iter()
                .map(|v| exact::from_f64(v).unwrap())
                .collect();
            for n in 0..=big_n.min(5) {
                let direct = hahn_projection_rational(&samples, n, &ep);
                let mono = normal_equations_rational(&samples, n, &ep).unwrap();
                let via_mono =
                    hahn_projection_rational(&monomial_grid_values(&mono, big_n), n, &ep);
                assert_eq!(direct, via_mono, "α={alpha} N={big_n} n={n}");

                let float = fit_hahn(&FunctionSpec::exp(), n, &params).unwrap();
                for (x, q) in float.coefficients.iter().zip(&direct) {
                    assert!((x - exact::to_f64(q)).abs() <= 1e-13 * x.abs().max(1.0));
                }
            }
        }
    }
}

#[test]
fn extremal_witness_is_sharp() {
    for &(n, big_n, alpha) in &[
        (0, 4, 0.0),
        (1, 4, 0.0),
        (2, 12, 0.0),
        (1, 8, 1.0),
        (3, 40, 0.5),
    ] {
        assert!(hypothesis_holds(n, big_n, alpha).unwrap());
        let params = HahnParams::symmetric(alpha, big_n).unwrap();
        let f = extremal_function(n, &params).unwrap();
        let fit = fit_hahn(&f, n, &params).unwrap();
        let measured = sup_error(&f, &fit).sup_error;
        let d = worst_case_constant(n, big_n, alpha).unwrap();
        assert!(
            ((measured - d) / d).abs() <= 1e-8,
            "({n}, {big_n}, {alpha}): {measured} vs {d}"
        );
        assert!(fit.coefficients.iter().all(|c| c.abs() < 1e-12));
    }
    let params = HahnParams::symmetric(0.0, 4).unwrap();
    let f = extremal_function(1, &params).unwrap();
    let fit = fit_hahn(&f, 1, &params).unwrap();
    assert_eq!(sup_error(&f, &fit).sup_error, 0.25);
}

/// The `(n+1)`-st finite difference of a polynomial of degree `n+1` divided
/// by `h^{n+1}` is its constant top derivative.
#[test]
fn extremal_witness_has_unit_top_derivative() {
    for &(n, big_n, alpha) in &[
        (0, 10, 0.0),
        (1, 4, 0.0),
        (2, 12, 0.0),
        (1, 8, 1.0),
        (3, 40, 0.5),
        (4, 60, 0.0),
    ] {
        let params = HahnParams::symmetric(alpha, big_n).unwrap();
        let f = extremal_function(n, &params).unwrap();
        let m = n + 1;
        let h = 2.0 / m as f64;
        let mut diff = 0.0;
        let mut binom = 1.0;
        for j in 0..=m {
            let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
            diff += sign * binom * f.eval(-1.0 + j as f64 * h);
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        let derivative = diff / h.powi(m as i32);
        assert!(
            (derivative - 1.0).abs() < 1e-9,
            "({n}, {big_n}, {alpha}): {derivative}"
        );
        assert_eq!(f.derivative_sup(m), Some(1.0));
    }
}

#[test]
fn measured_error_respects_the_bound() {
    let registry = [
        "const1",
        "linear",
        "exp",
        "sin2",
        "sin4",
        "poly:0.5,-1,0.25,2,-0.75",
    ];
    for name in registry {
        let f = FunctionSpec::from_registry(name, None).unwrap();
        for n in 1..=6usize {
            for big_n in [2 * n * (n + 1), 10 * n * n] {
                for alpha in [0.0, 1.0] {
                    if !hypothesis_holds(n, big_n, alpha).unwrap() {
                        continue;
                    }
                    let params = HahnParams::symmetric(alpha, big_n).unwrap();
                    let fit = fit_hahn(&f, n, &params).unwrap();
                    let measured = sup_error(&f, &fit).sup_error;
                    let bound = worst_case_constant(n, big_n, alpha).unwrap()
                        * f.derivative_sup(n + 1).unwrap();
                    // Rounding floor for functions the fit reproduces exactly.
                    assert!(
                        measured <= bound * (1.0 + 1e-8) + 1e-13,
                        "{name} n={n} N={big_n} α={alpha}: {measured:e} > {bound:e}"
                    );
                }
            }
        }
    }
}

#[test]
fn approximant_reproduces_linear_fit_on_grid() {
    let params = HahnParams::symmetric(0.0, 2).unwrap();
    let fit: Approximant = fit_hahn(&FunctionSpec::linear(), 1, &params).unwrap();
    for (mu, t) in [-1.0, 0.0, 1.0].into_iter().enumerate() {
        assert!((fit.evaluate(t) - t).abs() < 1e-15, "node {mu}");
    }
}
