//! Closed-form worst-case constants and degree thresholds for least squares
//! on `N + 1` equidistant nodes with the symmetric weight `α = β`.
//!
//! Every constant is formed in log space; the grid factor
//! `N! / (N^{n+1} (N-n-1)!)` is always the product `Π_{i=0}^{n} (1 - i/N)`.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::jacobi::continuous_constant;
use crate::specfun::{ln_factorial, ln_gamma_positive, ln_gen_binomial};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > -0.5 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "alpha must be > -1/2, got {alpha}"
        )))
    }
}

/// `n(α, N) = 1/2 - α + √((2α+1)(2α+2N+1)) / 2`.
pub fn degree_threshold(alpha: f64, big_n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if big_n == 0 {
        return Err(Error::Parameter("N must be at least 1".into()));
    }
    let n = big_n as f64;
    Ok(0.5 - alpha + 0.5 * ((2.0 * alpha + 1.0) * (2.0 * alpha + 2.0 * n + 1.0)).sqrt())
}

/// Whether the bound hypothesis `n + 1 <= n(α, N)` holds (no slack).
pub fn hypothesis_holds(n: usize, big_n: usize, alpha: f64) -> Result<bool> {
    Ok((n + 1) as f64 <= degree_threshold(alpha, big_n)?)
}

/// `D_{n,N} / C_n = Π_{i=0}^{n} (1 - i/N)`.
pub fn ratio_discrete_continuous(n: usize, big_n: usize) -> Result<f64> {
    if n + 1 > big_n {
        return Err(Error::Degree {
            degree: n + 1,
            max: big_n,
        });
    }
    let nn = big_n as f64;
    Ok((0..=n).map(|i| 1.0 - i as f64 / nn).product())
}

/// `ln` of the α-dependent part of `D_{n,N}`, formed as
/// `2^{n+1} C(n+1+α, n+1) / (n+2α+2)_{n+1}`: the sup of `P_{n+1}^{α,α}`
/// over the constant value of its `(n+1)`-st derivative.
fn ln_gamma_part(n: usize, alpha: f64) -> Result<f64> {
    let m = n + 1;
    let ln_rising: f64 = (0..m)
        .map(|i| (n as f64 + 2.0 * alpha + 2.0 + i as f64).ln())
        .sum();
    Ok(m as f64 * LN_2 + ln_gen_binomial(alpha, m)? - ln_rising)
}

/// The sharp constant
/// `D_{n,N} = 2^{n+1} Γ(n+2α+2) Γ(n+α+2) / ((n+1)! Γ(2n+2α+3) Γ(α+1)) · N!/(N^{n+1}(N-n-1)!)`.
///
/// Errors unless `n + 1 <= n(α, N)`.
pub fn worst_case_constant(n: usize, big_n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let threshold = degree_threshold(alpha, big_n)?;
    let factor = ratio_discrete_continuous(n, big_n)?;
    if (n + 1) as f64 > threshold {
        return Err(Error::Threshold {
            required: (n + 1) as f64,
            threshold,
        });
    }
    Ok(ln_gamma_part(n, alpha)?.exp() * factor)
}

/// Same formula without the threshold check, for reporting outside the
/// hypothesis. The value is then not claimed to be a bound.
pub fn worst_case_formula(n: usize, big_n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(ln_gamma_part(n, alpha)?.exp() * ratio_discrete_continuous(n, big_n)?)
}

/// Leading-order constant
/// `√(πn) / (2^{n+1} (n+1)!) · n^α / (Γ(α+1) 2^{2α})`.
pub fn simplified_constant(n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::Domain("simplified_constant requires n >= 1".into()));
    }
    let nf = n as f64;
    let ln = 0.5 * (PI * nf).ln() - (nf + 1.0) * LN_2 - ln_factorial(n + 1) + alpha * nf.ln()
        - ln_gamma_positive(alpha + 1.0)
        - 2.0 * alpha * LN_2;
    Ok(ln.exp())
}

/// The α = 0 constants: `D_n`, its slack factor `d_n`, and the exact
/// pre-Stirling constant `2^{n+1} (n+1)! / (2n+2)!`.
///
/// Stored as logarithms; the exact constant underflows a double near
/// `n = 170`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha0Constant {
    pub ln_upper: f64,
    pub ln_slack: f64,
    pub ln_exact: f64,
}

impl Alpha0Constant {
    /// `D_n`.
    pub fn upper(&self) -> f64 {
        self.ln_upper.exp()
    }
    /// `d_n`.
    pub fn slack(&self) -> f64 {
        self.ln_slack.exp()
    }
    pub fn exact(&self) -> f64 {
        self.ln_exact.exp()
    }
    /// `D_n d_n <= exact <= D_n`, compared in log space.
    pub fn sandwich_holds(&self) -> bool {
        self.ln_upper + self.ln_slack <= self.ln_exact && self.ln_exact <= self.ln_upper
    }
}

pub fn alpha0_constant(n: usize) -> Alpha0Constant {
    let m = (n + 1) as f64;
    let ln_prefactor = 0.5 * (PI * m).ln() - m * LN_2 - ln_factorial(n + 1);
    let ln_upper = ln_prefactor + 1.0 / (6.0 * m) - 1.0 / (24.0 * m + 1.0);
    let ln_slack =
        2.0 / (12.0 * m + 1.0) + 1.0 / (24.0 * m + 1.0) - 1.0 / (6.0 * m) - 1.0 / (24.0 * m);
    // 2^m m! / (2m)! with (2m)!/m! = (m+1)_m.
    let ln_rising: f64 = (1..=n + 1).map(|i| (m + i as f64).ln()).sum();
    let ln_exact = m * LN_2 - ln_rising;
    Alpha0Constant {
        ln_upper,
        ln_slack,
        ln_exact,
    }
}

/// Minimal node counts from the two convergence rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeCounts {
    /// `⌈(2n² + (4α+2)n) / (2α+1)⌉`, valid for α > -1/2.
    pub c3: usize,
    /// `2n(n+1)`, valid for α >= 0.
    pub c4: usize,
    pub c4_applicable: bool,
}

/// Both counts guarantee `n(α, N) >= n + 1` within their range of α. The
/// result is never below 1.
pub fn min_nodes(n: usize, alpha: f64) -> Result<NodeCounts> {
    check_alpha(alpha)?;
    let nf = n as f64;
    let raw = (2.0 * nf * nf + (4.0 * alpha + 2.0) * nf) / (2.0 * alpha + 1.0);
    // Absorb rounding when the exact quotient is an integer.
    let c3 = (raw - raw.abs() * 1e-12).ceil().max(1.0) as usize;
    let c4 = (2 * n * (n + 1)).max(1);
    Ok(NodeCounts {
        c3,
        c4,
        c4_applicable: alpha >= 0.0,
    })
}

/// All constants for one `(n, N, α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub big_n: usize,
    pub alpha: f64,
    /// `n(α, N)`.
    pub threshold: f64,
    /// `n + 1 <= n(α, N)`.
    pub hypothesis_ok: bool,
    /// `D_{n,N}`; only a sharp bound when `hypothesis_ok`.
    pub worst_case: f64,
    /// `C_n`, the continuous counterpart.
    pub continuous: f64,
    /// `D_{n,N} / C_n`.
    pub ratio: f64,
    /// Leading-order constant; undefined at `n = 0`.
    pub simplified: Option<f64>,
    pub node_min_c3: usize,
    pub node_min_c4: usize,
}

pub fn bound_report(n: usize, big_n: usize, alpha: f64) -> Result<BoundReport> {
    let threshold = degree_threshold(alpha, big_n)?;
    let worst_case = worst_case_formula(n, big_n, alpha)?;
    let continuous = continuous_constant(n, alpha)?;
    let nodes = min_nodes(n, alpha)?;
    Ok(BoundReport {
        n,
        big_n,
        alpha,
        threshold,
        hypothesis_ok: (n + 1) as f64 <= threshold,
        worst_case,
        continuous,
        ratio: ratio_discrete_continuous(n, big_n)?,
        simplified: if n == 0 {
            None
        } else {
            Some(simplified_constant(n, alpha)?)
        },
        node_min_c3: nodes.c3,
        node_min_c4: nodes.c4,
    })
}
