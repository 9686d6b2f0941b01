//! Discrete weighted least squares on the equidistant grid
//! `t_μ = -1 + 2μ/N`, expanded in Hahn polynomials.
//!
//! The fit of degree `n` is `Σ_k c_k Q_k(N(1+t)/2)` with
//! `c_k = <f, Q_k>_ω / <Q_k, Q_k>_ω`. Two normal-equation solvers in the
//! monomial basis serve as independent checks.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::bounds::{degree_threshold, worst_case_constant};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::exact::{self, ExactParams, RationalScalar};
use crate::functions::FunctionSpec;
use crate::hahn::{
    grid_position, hahn_eval, hahn_grid_values, hahn_norm_sq, hahn_recurrence_all, node,
    weighted_sum, DiscreteWeight, HahnParams,
};
use crate::specfun::ln_factorial;

/// Condition estimate above which the monomial Gram system is refused.
pub const MAX_GRAM_CONDITION: f64 = 1e12;
/// Equispaced points in the sup-norm search.
pub const SEARCH_EQUISPACED: usize = 10_001;
/// Chebyshev extrema in the sup-norm search.
pub const SEARCH_CHEBYSHEV: usize = 4_097;
/// Relative width at which golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-10;

/// A degree-`n` polynomial in the Hahn basis of `params`.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximant {
    pub params: HahnParams,
    pub degree: usize,
    /// `c_0..=c_n`.
    pub coefficients: Vec<f64>,
}

impl Approximant {
    pub fn new(params: HahnParams, coefficients: Vec<f64>) -> Result<Self> {
        let degree = coefficients.len().checked_sub(1).ok_or_else(|| {
            Error::Parameter("an approximant needs at least one coefficient".into())
        })?;
        if degree > params.big_n {
            return Err(Error::Degree {
                degree,
                max: params.big_n,
            });
        }
        if let Some(c) = coefficients.iter().find(|c| !c.is_finite()) {
            return Err(Error::Instability(format!("non-finite coefficient {c}")));
        }
        Ok(Approximant {
            params,
            degree,
            coefficients,
        })
    }

    /// `Σ_k c_k Q_k(N(1+t)/2)`.
    pub fn evaluate(&self, t: f64) -> f64 {
        let x = grid_position(t, self.params.big_n);
        hahn_recurrence_all(self.degree, x, &self.params)
            .iter()
            .zip(&self.coefficients)
            .map(|(q, c)| q * c)
            .sum()
    }

    /// Values at the nodes `t_0..=t_N`.
    pub fn grid_values(&self) -> Vec<f64> {
        (0..=self.params.big_n)
            .map(|mu| self.evaluate(node(mu, self.params.big_n)))
            .collect()
    }
}

/// `f(t_μ)` for `μ = 0..=N`.
pub fn sample(f: &FunctionSpec, big_n: usize) -> Result<Vec<f64>> {
    (0..=big_n)
        .map(|mu| f.eval_checked(node(mu, big_n)))
        .collect()
}

fn check_fit_args(n: usize, params: &HahnParams) -> Result<()> {
    if n > params.big_n {
        return Err(Error::Degree {
            degree: n,
            max: params.big_n,
        });
    }
    params.warn_if_unstable(n);
    Ok(())
}

/// Least-squares fit of degree `n` through the Hahn expansion.
pub fn fit_hahn(f: &FunctionSpec, n: usize, params: &HahnParams) -> Result<Approximant> {
    check_fit_args(n, params)?;
    let samples = sample(f, params.big_n)?;
    fit_samples(&samples, n, params)
}

/// Same as [`fit_hahn`] for already sampled values `f(t_0)..=f(t_N)`.
pub fn fit_samples(samples: &[f64], n: usize, params: &HahnParams) -> Result<Approximant> {
    check_fit_args(n, params)?;
    if samples.len() != params.big_n + 1 {
        return Err(Error::LengthMismatch {
            expected: params.big_n + 1,
            got: samples.len(),
        });
    }
    let weight = DiscreteWeight::new(*params)?;
    let q = hahn_grid_values(n, params)?;
    let coefficients = q
        .iter()
        .enumerate()
        .map(|(k, qk)| Ok(weighted_sum(samples, qk, weight.values()) / hahn_norm_sq(k, params)?))
        .collect::<Result<Vec<_>>>()?;
    Approximant::new(*params, coefficients)
}

/// Least-squares fit from the weighted Gram system in the monomial basis
/// `1, t, …, t^n`, solved by Cholesky.
///
/// The monomial solution is re-expanded in the Hahn basis using the
/// hypergeometric evaluator, so no step is shared with [`fit_hahn`].
pub fn fit_normal_equations(
    f: &FunctionSpec,
    n: usize,
    params: &HahnParams,
) -> Result<Approximant> {
    check_fit_args(n, params)?;
    let big_n = params.big_n;
    let samples = sample(f, big_n)?;
    let weight = DiscreteWeight::new(*params)?;
    let total: f64 = weight.values().iter().sum();
    let nodes: Vec<f64> = (0..=big_n).map(|mu| node(mu, big_n)).collect();

    let dim = n + 1;
    let mut gram = DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = DVector::<f64>::zeros(dim);
    for ((&t, &w), &y) in nodes.iter().zip(weight.values()).zip(&samples) {
        let w = w / total;
        let powers: Vec<f64> = (0..2 * dim - 1).map(|j| t.powi(j as i32)).collect();
        for j in 0..dim {
            rhs[j] += w * y * powers[j];
            for k in 0..dim {
                gram[(j, k)] += w * powers[j + k];
            }
        }
    }

    let eigen = gram.clone().symmetric_eigen();
    let (lo, hi) = eigen
        .eigenvalues
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| {
            (lo.min(v), hi.max(v.abs()))
        });
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if condition > MAX_GRAM_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let chol = gram.cholesky().ok_or(Error::IllConditioned { condition })?;
    let mono = chol.solve(&rhs);

    let values: Vec<f64> = nodes
        .iter()
        .map(|&t| mono.iter().rev().fold(0.0, |acc, &a| acc * t + a))
        .collect();
    let coefficients = (0..=n)
        .map(|k| {
            let qk = (0..=big_n)
                .map(|i| hahn_eval(k, i as f64, params))
                .collect::<Result<Vec<_>>>()?;
            Ok(weighted_sum(&values, &qk, weight.values()) / hahn_norm_sq(k, params)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Approximant::new(*params, coefficients)
}

/// The monomial normal equations solved in exact rational arithmetic,
/// for nonnegative integer `α`, `β`.
///
/// The samples `f(t_μ)` are taken as exact doubles; the only rounding is
/// the final conversion of each Hahn coefficient. Cost grows quickly with
/// `N` and `n`; intended for oracle checks on small grids.
pub fn fit_normal_equations_exact(
    f: &FunctionSpec,
    n: usize,
    params: &HahnParams,
) -> Result<Approximant> {
    check_fit_args(n, params)?;
    let ep = ExactParams::from_params(params).ok_or_else(|| {
        Error::Parameter(format!(
            "exact fitting needs nonnegative integer alpha and beta (got {} and {})",
            params.alpha, params.beta
        ))
    })?;
    let samples = sample(f, params.big_n)?
        .into_iter()
        .map(exact::from_f64)
        .collect::<Result<Vec<_>>>()?;
    let mono = normal_equations_rational(&samples, n, &ep)?;
    let values = monomial_grid_values(&mono, params.big_n);
    let coefficients = hahn_projection_rational(&values, n, &ep)
        .iter()
        .map(exact::to_f64)
        .collect();
    Approximant::new(*params, coefficients)
}

fn exact_nodes(big_n: usize) -> Vec<RationalScalar> {
    (0..=big_n)
        .map(|mu| exact::ratio(2 * mu as i64 - big_n as i64, big_n as i64))
        .collect()
}

/// Monomial coefficients `a_0..=a_n` (in `t`) of the weighted
/// least-squares polynomial through the samples, by exact elimination.
pub fn normal_equations_rational(
    samples: &[RationalScalar],
    n: usize,
    ep: &ExactParams,
) -> Result<Vec<RationalScalar>> {
    if samples.len() != ep.big_n + 1 {
        return Err(Error::LengthMismatch {
            expected: ep.big_n + 1,
            got: samples.len(),
        });
    }
    let weights = ep.weights();
    let dim = n + 1;
    let mut gram = vec![vec![RationalScalar::zero(); dim]; dim];
    let mut rhs = vec![RationalScalar::zero(); dim];
    for ((t, w), y) in exact_nodes(ep.big_n).iter().zip(&weights).zip(samples) {
        let mut powers = Vec::with_capacity(2 * dim - 1);
        let mut p = exact::int(1);
        for _ in 0..2 * dim - 1 {
            powers.push(p.clone());
            p *= t;
        }
        let wy = w * y;
        for j in 0..dim {
            rhs[j] += &wy * &powers[j];
            for k in 0..dim {
                gram[j][k] += w * &powers[j + k];
            }
        }
    }
    exact::solve(gram, rhs)
}

/// `Σ_j a_j t_μ^j` at every node, exactly.
pub fn monomial_grid_values(mono: &[RationalScalar], big_n: usize) -> Vec<RationalScalar> {
    exact_nodes(big_n)
        .iter()
        .map(|t| {
            mono.iter()
                .rev()
                .fold(RationalScalar::zero(), |acc, a| acc * t + a)
        })
        .collect()
}

/// Hahn coefficients `c_k = <y, Q_k>_ω / <Q_k, Q_k>_ω`, exactly.
pub fn hahn_projection_rational(
    samples: &[RationalScalar],
    n: usize,
    ep: &ExactParams,
) -> Vec<RationalScalar> {
    let weights = ep.weights();
    ep.hahn_grid(n)
        .iter()
        .enumerate()
        .map(|(k, qk)| exact::inner_product(samples, qk, &weights) / ep.norm_sq(k))
        .collect()
}

/// Measured `sup_{[-1,1]} |f - a|`, optionally with a theoretical bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub sup_error: f64,
    pub argmax: f64,
    pub bound: Option<f64>,
    /// `sup_error / bound`.
    pub ratio: Option<f64>,
}

impl ErrorReport {
    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self.ratio = Some(if bound > 0.0 {
            self.sup_error / bound
        } else if self.sup_error == 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
        self
    }
}

/// The search grid: equispaced and Chebyshev points merged in increasing
/// order, both endpoints included.
pub fn search_points() -> Vec<f64> {
    let m = (SEARCH_EQUISPACED - 1) as f64;
    let c = (SEARCH_CHEBYSHEV - 1) as f64;
    let mut pts: Vec<f64> = (0..SEARCH_EQUISPACED)
        .map(|j| (2.0 * j as f64 - m) / m)
        // -cos(πj/c) written as a sine so the set is exactly symmetric.
        .chain(
            (0..SEARCH_CHEBYSHEV)
                .map(|j| (std::f64::consts::PI * (2.0 * j as f64 - c) / (2.0 * c)).sin()),
        )
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Estimates `sup |f - a|` on `[-1, 1]`: dense search, then golden-section
/// refinement between the neighbours of the best point.
///
/// This is a lower estimate of the true sup. Ties go to the smallest `t`.
pub fn sup_error(f: &FunctionSpec, a: &Approximant) -> ErrorReport {
    let err = |t: f64| (f.eval(t) - a.evaluate(t)).abs();
    let pts = search_points();
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for (i, &t) in pts.iter().enumerate() {
        let e = err(t);
        if e > best {
            best = e;
            best_i = i;
        }
    }
    let mut argmax = pts[best_i];
    let mut lo = pts[best_i.saturating_sub(1)];
    let mut hi = pts[(best_i + 1).min(pts.len() - 1)];

    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut e1, mut e2) = (err(x1), err(x2));
    while hi - lo > REFINE_TOL * argmax.abs().max(1.0) {
        if e1 >= e2 {
            hi = x2;
            x2 = x1;
            e2 = e1;
            x1 = hi - INV_PHI * (hi - lo);
            e1 = err(x1);
        } else {
            lo = x1;
            x1 = x2;
            e1 = e2;
            x2 = lo + INV_PHI * (hi - lo);
            e2 = err(x2);
        }
    }
    for (t, e) in [(x1, e1), (x2, e2)] {
        if e > best {
            best = e;
            argmax = t;
        }
    }
    ErrorReport {
        sup_error: best,
        argmax,
        bound: None,
        ratio: None,
    }
}

/// `D_{n,N} · sup |f^{(n+1)}|` when `α = β`, the hypothesis
/// `n + 1 <= n(α, N)` holds and `f` certifies its `(n+1)`-st derivative.
pub fn theorem_bound(f: &FunctionSpec, n: usize, params: &HahnParams) -> Option<f64> {
    if !params.is_symmetric() || n >= params.big_n {
        return None;
    }
    let d = worst_case_constant(n, params.big_n, params.alpha).ok()?;
    Some(d * f.derivative_sup(n + 1)?)
}

/// `|d^m/dt^m Q_m(N(1+t)/2; α, α, N)|`, a constant, as the product
/// `Π_{i<m} (N/2) (i+1) (m+2α+1+i) / ((α+1+i) (N-i))`.
fn top_derivative(m: usize, alpha: f64, big_n: usize) -> f64 {
    let half_n = 0.5 * big_n as f64;
    let mut acc = Dd::ONE;
    for i in 0..m {
        let i_f = i as f64;
        let num = Dd::sum(m as f64 + 1.0 + i_f, 2.0 * alpha) * (half_n * (i_f + 1.0));
        let den = Dd::sum(alpha + 1.0, i_f) * (big_n as f64 - i_f);
        acc = acc * (num / den);
    }
    acc.to_f64()
}

/// The witness `f* = Q̂_{n+1} / sup|Q̂_{n+1}^{(n+1)}|` for which the
/// worst-case constant is attained.
///
/// `f*` is orthogonal to every polynomial of degree `n` on the grid, so its
/// fit is zero, and its `(n+1)`-st derivative is identically 1.
pub fn extremal_function(n: usize, params: &HahnParams) -> Result<FunctionSpec> {
    if !params.is_symmetric() {
        return Err(Error::Parameter(format!(
            "the extremal function needs alpha = beta (got {} and {})",
            params.alpha, params.beta
        )));
    }
    let alpha = params.alpha;
    let big_n = params.big_n;
    let threshold = degree_threshold(alpha, big_n)?;
    let m = n + 1;
    if m as f64 > threshold {
        return Err(Error::Threshold {
            required: m as f64,
            threshold,
        });
    }
    if m > big_n {
        return Err(Error::Degree {
            degree: m,
            max: big_n,
        });
    }
    let scale = 1.0 / top_derivative(m, alpha, big_n);
    // (-1)^m Q_m increases in t, so the top derivative is positive.
    let signed = if m.is_multiple_of(2) { scale } else { -scale };
    let p = *params;
    Ok(FunctionSpec::new(format!("extremal:{n}"), move |t| {
        signed * hahn_eval(m, grid_position(t, p.big_n), &p).unwrap_or(f64::NAN)
    })
    .with_derivative_sup(move |k| match k.cmp(&m) {
        std::cmp::Ordering::Less => None,
        std::cmp::Ordering::Equal => Some(1.0),
        std::cmp::Ordering::Greater => Some(0.0),
    }))
}

/// `sup|f^{(n)}| · n^{α+1/2} / (2^n n!)`, formed in log space.
pub fn class_k_defect(f: &FunctionSpec, n: usize, alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha >= -0.5) {
        return Err(Error::Parameter(format!(
            "alpha must be >= -1/2, got {alpha}"
        )));
    }
    let d = f
        .derivative_sup(n)
        .ok_or_else(|| Error::MissingDerivativeBound {
            function: f.name().to_string(),
            order: n,
        })?;
    if d == 0.0 || n == 0 {
        return Ok(if alpha == -0.5 && n == 0 { d } else { 0.0 });
    }
    let nf = n as f64;
    let ln = d.ln() + (alpha + 0.5) * nf.ln() - nf * std::f64::consts::LN_2 - ln_factorial(n);
    Ok(ln.exp())
}
