//! Hahn polynomials `Q_k(x; α, β, N)` on the integer grid `{0, …, N}`.
//!
//! Two independent evaluators are provided: the terminating hypergeometric
//! sum (accumulated in double-double arithmetic, since its terms alternate
//! and grow far beyond the result) and the three-term recurrence in the
//! degree. The recurrence is what the least-squares code uses; the sum is
//! the reference.

use crate::bounds::degree_threshold;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::specfun::{gen_binomial, ln_gen_binomial};

/// Largest degree for which double precision is declared reliable.
pub const STABLE_MAX_DEGREE: usize = 40;
/// Largest grid parameter `N` for which double precision is declared reliable.
pub const STABLE_MAX_GRID: usize = 10_000;

/// Grid size `N` and weight exponents `α`, `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HahnParams {
    pub alpha: f64,
    pub beta: f64,
    /// The grid is `{0, 1, …, big_n}`, i.e. `N + 1` nodes.
    pub big_n: usize,
}

impl HahnParams {
    pub fn new(alpha: f64, beta: f64, big_n: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::Parameter(format!("alpha must be > -1, got {alpha}")));
        }
        if !(beta.is_finite() && beta > -1.0) {
            return Err(Error::Parameter(format!("beta must be > -1, got {beta}")));
        }
        if big_n == 0 {
            return Err(Error::Parameter("N must be at least 1".into()));
        }
        Ok(HahnParams { alpha, beta, big_n })
    }

    /// The ultraspherical case `α = β`.
    pub fn symmetric(alpha: f64, big_n: usize) -> Result<Self> {
        Self::new(alpha, alpha, big_n)
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.big_n {
            return Err(Error::Degree {
                degree: n,
                max: self.big_n,
            });
        }
        Ok(())
    }

    /// Describes why `(n, N)` lies outside the validated double-precision
    /// range, if it does.
    pub fn stability_issue(&self, n: usize) -> Option<String> {
        if n > STABLE_MAX_DEGREE || self.big_n > STABLE_MAX_GRID {
            Some(format!(
                "degree {n} with N = {} is outside the validated range (n <= {STABLE_MAX_DEGREE}, N <= {STABLE_MAX_GRID})",
                self.big_n
            ))
        } else {
            None
        }
    }

    pub(crate) fn warn_if_unstable(&self, n: usize) {
        if let Some(msg) = self.stability_issue(n) {
            log::warn!("{msg}; results may have lost accuracy");
        }
    }
}

/// `ω(i) = C(α+i, i) C(β+N-i, N-i)`.
pub fn weight(i: usize, params: &HahnParams) -> Result<f64> {
    if i > params.big_n {
        return Err(Error::Index {
            index: i,
            n_max: params.big_n,
        });
    }
    let w = gen_binomial(params.alpha, i)? * gen_binomial(params.beta, params.big_n - i)?;
    if w.is_finite() {
        return Ok(w);
    }
    let ln_w = ln_gen_binomial(params.alpha, i)? + ln_gen_binomial(params.beta, params.big_n - i)?;
    Ok(ln_w.exp())
}

/// The weight `ω` sampled on the whole grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteWeight {
    params: HahnParams,
    values: Vec<f64>,
}

impl DiscreteWeight {
    pub fn new(params: HahnParams) -> Result<Self> {
        let mut values = (0..=params.big_n)
            .map(|i| weight(i, &params))
            .collect::<Result<Vec<_>>>()?;
        if params.is_symmetric() {
            // Mirror so that ω(i) = ω(N - i) holds bit for bit.
            let n = params.big_n;
            for i in 0..=n / 2 {
                values[n - i] = values[i];
            }
        }
        Ok(DiscreteWeight { params, values })
    }

    pub fn params(&self) -> &HahnParams {
        &self.params
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `Q_n(x; α, β, N)` from the hypergeometric sum
/// `Σ_k (-n)_k (n+α+β+1)_k (-x)_k / ((α+1)_k (-N)_k k!)`.
///
/// `x` may be any real number; off the grid `(-x)_k` is a real product.
pub fn hahn_eval(n: usize, x: f64, params: &HahnParams) -> Result<f64> {
    params.check_degree(n)?;
    params.warn_if_unstable(n);
    Ok(hahn_sum(n, x, params))
}

fn hahn_sum(n: usize, x: f64, params: &HahnParams) -> f64 {
    let big_n = params.big_n as f64;
    if x > 0.5 * big_n {
        // Q_n(x; α, β, N) = (-1)^n (β+1)_n / (α+1)_n · Q_n(N-x; β, α, N).
        // The terms of the sum grow with x, so this keeps them small.
        let mut factor = Dd::ONE;
        for i in 0..n {
            factor = factor * Dd::sum(params.beta + 1.0, i as f64)
                / Dd::sum(params.alpha + 1.0, i as f64);
        }
        if n % 2 == 1 {
            factor = -factor;
        }
        let swapped = HahnParams {
            alpha: params.beta,
            beta: params.alpha,
            big_n: params.big_n,
        };
        return (factor * hahn_series(n, Dd::sum(big_n, -x), &swapped)).to_f64();
    }
    hahn_series(n, Dd::from_f64(x), params).to_f64()
}

fn hahn_series(n: usize, x: Dd, params: &HahnParams) -> Dd {
    let nf = n as f64;
    let big_n = params.big_n as f64;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..n {
        let kf = k as f64;
        // Ratio t_{k+1}/t_k, every factor formed exactly in double-double.
        let a = Dd::from_f64(kf - nf);
        let b = Dd::sum(kf + nf + 1.0, params.alpha) + params.beta;
        let c = Dd::from_f64(kf) - x;
        if c.is_zero() {
            break;
        }
        let d = Dd::sum(kf + 1.0, params.alpha);
        let e = Dd::from_f64(kf - big_n);
        let f = Dd::from_f64(kf + 1.0);
        term = term * (a * b * c) / (d * e * f);
        sum = sum + term;
    }
    sum
}

/// Coefficients `(A_m, C_m)` of `-x Q_m = A_m Q_{m+1} - (A_m + C_m) Q_m + C_m Q_{m-1}`.
fn recurrence_coefficients(m: usize, params: &HahnParams) -> (Dd, Dd) {
    let (a, b) = (params.alpha, params.beta);
    let mf = m as f64;
    let big_n = params.big_n as f64;
    let s = Dd::sum(a, b);
    let upper = if m == 0 {
        // (s + 1) cancels between numerator and denominator.
        Dd::sum(a, 1.0) * big_n / (s + 2.0)
    } else {
        (s + (mf + 1.0)) * Dd::sum(mf + 1.0, a) * (big_n - mf)
            / ((s + (2.0 * mf + 1.0)) * (s + (2.0 * mf + 2.0)))
    };
    let lower = if m == 0 {
        Dd::ZERO
    } else {
        (s + (mf + big_n + 1.0)) * Dd::sum(mf, b) * mf / ((s + 2.0 * mf) * (s + (2.0 * mf + 1.0)))
    };
    (upper, lower)
}

/// `Q_n(x)` by the ascending three-term recurrence in the degree.
pub fn hahn_eval_recurrence(n: usize, x: f64, params: &HahnParams) -> Result<f64> {
    params.check_degree(n)?;
    params.warn_if_unstable(n);
    Ok(*hahn_recurrence_all(n, x, params)
        .last()
        .expect("at least Q_0"))
}

/// `[Q_0(x), …, Q_n(x)]` by the recurrence. `n <= N` is assumed.
pub(crate) fn hahn_recurrence_all(n: usize, x: f64, params: &HahnParams) -> Vec<f64> {
    // Near n = N the coefficient A_m is small and the recurrence amplifies
    // rounding, so it runs in double-double.
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut prev = Dd::ZERO;
    let mut cur = Dd::ONE;
    for m in 0..n {
        let (upper, lower) = recurrence_coefficients(m, params);
        let next = ((upper + lower - Dd::from_f64(x)) * cur - lower * prev) / upper;
        prev = cur;
        cur = next;
        out.push(cur.to_f64());
    }
    out
}

/// All `Q_0..=Q_n` on the integer grid, indexed `[k][i]`, via the recurrence.
pub fn hahn_grid_values(n: usize, params: &HahnParams) -> Result<Vec<Vec<f64>>> {
    params.check_degree(n)?;
    params.warn_if_unstable(n);
    let mut rows = vec![Vec::with_capacity(params.big_n + 1); n + 1];
    for i in 0..=params.big_n {
        for (k, v) in hahn_recurrence_all(n, i as f64, params)
            .into_iter()
            .enumerate()
        {
            rows[k].push(v);
        }
    }
    Ok(rows)
}

/// Closed-form squared norm
/// `(-1)^k (k+α+β+1)_{N+1} (β+1)_k k! / ((2k+α+β+1) (α+1)_k (-N)_k N!)`.
///
/// The sign of `(-1)^k` cancels against `(-N)_k`. With `s = α + β + 1` the
/// value is rewritten as
/// `c · Π_{j=1}^{N} (1 + (k+s)/j) · Π_{i<k} (β+1+i)(i+1) / ((α+1+i)(N-i))`
/// where `c = (k+s)/(2k+s)` for `k >= 1` and `c = 1` for `k = 0`, multiplied
/// out in double-double, with a log-space sum as the overflow fallback.
pub fn hahn_norm_sq(k: usize, params: &HahnParams) -> Result<f64> {
    params.check_degree(k)?;
    let (a, b) = (params.alpha, params.beta);
    let s = a + b + 1.0;
    let kf = k as f64;
    let big_n = params.big_n as f64;
    let shift = Dd::sum(kf, s);

    // Direct double-double product first; it is exact for small integer
    // cases and only falls back to logs on overflow or underflow.
    let mut prod = if k == 0 {
        Dd::ONE
    } else {
        shift / (shift + kf)
    };
    for j in 1..=params.big_n {
        prod = prod * (shift + j as f64) / Dd::from_f64(j as f64);
    }
    for i in 0..k {
        let i = i as f64;
        prod = prod * (Dd::sum(b + 1.0, i) * (i + 1.0)) / (Dd::sum(a + 1.0, i) * (big_n - i));
    }
    let direct = prod.to_f64();
    if direct.is_finite() && direct > f64::MIN_POSITIVE {
        return Ok(direct);
    }

    let mut ln_norm = if k == 0 {
        0.0
    } else {
        ((kf + s) / (2.0 * kf + s)).ln()
    };
    ln_norm += (1..=params.big_n)
        .map(|j| ((kf + s) / j as f64).ln_1p())
        .sum::<f64>();
    for i in 0..k {
        let i = i as f64;
        ln_norm += ((b + 1.0 + i) * (i + 1.0) / ((a + 1.0 + i) * (big_n - i))).ln();
    }
    Ok(ln_norm.exp())
}

/// `<f, g>_ω = Σ f(i) g(i) ω(i)`, accumulated in double-double.
pub fn inner_product(f_values: &[f64], g_values: &[f64], weight: &DiscreteWeight) -> Result<f64> {
    let expected = weight.len();
    for got in [f_values.len(), g_values.len()] {
        if got != expected {
            return Err(Error::LengthMismatch { expected, got });
        }
    }
    Ok(weighted_sum(f_values, g_values, weight.values()))
}

pub(crate) fn weighted_sum(f: &[f64], g: &[f64], w: &[f64]) -> f64 {
    f.iter()
        .zip(g)
        .zip(w)
        .fold(Dd::ZERO, |acc, ((&a, &b), &c)| {
            acc + Dd::from_f64(a) * b * c
        })
        .to_f64()
}

/// Normalized symmetric Hahn polynomial on `[-1, 1]`:
/// `Q̂_k(t) = (-1)^k Q_k(N(1+t)/2; α, α, N) / √<Q_k, Q_k>_ω`.
pub fn normalized_hahn_eval(k: usize, t: f64, params: &HahnParams) -> Result<f64> {
    if !params.is_symmetric() {
        return Err(Error::Parameter(format!(
            "normalized Hahn polynomials need alpha = beta (got {} and {})",
            params.alpha, params.beta
        )));
    }
    let x = grid_position(t, params.big_n);
    let q = hahn_eval(k, x, params)?;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * q / hahn_norm_sq(k, params)?.sqrt())
}

/// Maps `t ∈ [-1, 1]` to `x = N(1+t)/2 ∈ [0, N]`.
pub fn grid_position(t: f64, big_n: usize) -> f64 {
    0.5 * big_n as f64 * (1.0 + t)
}

/// Equidistant node `t_μ = -1 + 2μ/N`, formed as `(2μ - N)/N`.
pub fn node(mu: usize, big_n: usize) -> f64 {
    (2.0 * mu as f64 - big_n as f64) / big_n as f64
}

/// Refinement factor of the dense sampling in [`endpoint_max_check`].
pub const ENDPOINT_SAMPLING: usize = 64;
const ENDPOINT_TOL: f64 = 1e-10;

/// Checks that `|Q_n(·; α, α, N)|` on `[0, N]` peaks at the endpoints with
/// `Q_n(0) = 1` and `Q_n(N) = (-1)^n`, sampling the grid refined 64 times.
///
/// Only defined for `n <= n(α, N)`, where the property is known to hold.
pub fn endpoint_max_check(n: usize, alpha: f64, big_n: usize) -> Result<bool> {
    let threshold = degree_threshold(alpha, big_n)?;
    if n as f64 > threshold {
        return Err(Error::Threshold {
            required: n as f64,
            threshold,
        });
    }
    let params = HahnParams::symmetric(alpha, big_n)?;
    params.check_degree(n)?;
    let at_zero = hahn_sum(n, 0.0, &params);
    let at_end = hahn_sum(n, big_n as f64, &params);
    let expected_end = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    if (at_zero - 1.0).abs() > ENDPOINT_TOL || (at_end - expected_end).abs() > ENDPOINT_TOL {
        return Ok(false);
    }
    let samples = ENDPOINT_SAMPLING * big_n;
    let interior_max = (1..samples)
        .map(|j| hahn_sum(n, j as f64 / ENDPOINT_SAMPLING as f64, &params).abs())
        .fold(0.0, f64::max);
    Ok(interior_max <= 1.0 + ENDPOINT_TOL)
}
