//! Jacobi polynomials `P_n^{α,β}` on `[-1, 1]` and the continuous
//! worst-case constant `C_n`.

use std::f64::consts::LN_2;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::specfun::{gen_binomial, ln_factorial, ln_gamma_positive};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0 && beta.is_finite() && beta > -1.0) {
            return Err(Error::Parameter(format!(
                "Jacobi parameters must exceed -1 (alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(JacobiParams { alpha, beta })
    }

    pub fn symmetric(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha)
    }

    /// `ϱ(x) = (1-x)^α (1+x)^β`.
    pub fn weight(&self, x: f64) -> f64 {
        (1.0 - x).powf(self.alpha) * (1.0 + x).powf(self.beta)
    }
}

/// `P_n^{α,β}(x) = (α+1)_n/n! · Σ_k (-n)_k (n+α+β+1)_k / (α+1)_k · ((1-x)/2)^k / k!`,
/// summed in double-double.
pub fn jacobi_eval(n: usize, x: f64, params: &JacobiParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let nf = n as f64;
    let half_gap = Dd::sum(1.0, -x) * 0.5;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut prefactor = Dd::ONE;
    for k in 0..n {
        let kf = k as f64;
        let up = Dd::from_f64(kf - nf) * (Dd::sum(kf + nf + 1.0, a) + b);
        let down = Dd::sum(kf + 1.0, a) * (kf + 1.0);
        term = term * up * half_gap / down;
        sum = sum + term;
        prefactor = prefactor * Dd::sum(kf + 1.0, a) / Dd::from_f64(kf + 1.0);
    }
    (prefactor * sum).to_f64()
}

/// `(P_n, P_n)_ϱ = 2^{α+β+1} Γ(n+α+1) Γ(n+β+1) / ((2n+α+β+1) n! Γ(n+α+β+1))`.
pub fn jacobi_norm_sq(n: usize, params: &JacobiParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let nf = n as f64;
    // (2n+s) Γ(n+s) with s = α+β+1; at n = 0 this is Γ(s+1), which stays
    // defined when s <= 0.
    let s = a + b + 1.0;
    let ln_den = if n == 0 {
        ln_gamma_positive(s + 1.0)
    } else {
        (2.0 * nf + s).ln() + ln_gamma_positive(nf + s)
    };
    let ln = s * LN_2 + ln_gamma_positive(nf + a + 1.0) + ln_gamma_positive(nf + b + 1.0)
        - ln_factorial(n)
        - ln_den;
    ln.exp()
}

/// `max_{[-1,1]} |P_n^{α,β}| = C(n + max(α,β), n)` for `max(α, β) >= -1/2`.
pub fn jacobi_sup(n: usize, params: &JacobiParams) -> Result<f64> {
    let m = params.alpha.max(params.beta);
    if m < -0.5 {
        return Err(Error::Parameter(format!(
            "sup formula needs max(alpha, beta) >= -1/2, got {m}"
        )));
    }
    gen_binomial(m, n)
}

/// `C_n = 2^{n+1} Γ(n+α+2) Γ(n+2α+2) / ((n+1)! Γ(2n+2α+3) Γ(α+1))`, the
/// sharp constant for continuous least squares with weight `(1-x²)^α`.
pub fn continuous_constant(n: usize, alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha >= -0.5) {
        return Err(Error::Parameter(format!(
            "alpha must be >= -1/2, got {alpha}"
        )));
    }
    let nf = n as f64;
    let ln = (nf + 1.0) * LN_2
        + ln_gamma_positive(nf + alpha + 2.0)
        + ln_gamma_positive(nf + 2.0 * alpha + 2.0)
        - ln_factorial(n + 1)
        - ln_gamma_positive(2.0 * nf + 2.0 * alpha + 3.0)
        - ln_gamma_positive(alpha + 1.0);
    Ok(ln.exp())
}
