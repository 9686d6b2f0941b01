//! Special-function primitives: log-gamma, rising factorials, generalized
//! binomial coefficients and the Stirling-type bounds on central binomials.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use crate::dd::Dd;
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Bernoulli-number coefficients `B_2k / (2k (2k - 1))` of the Stirling series.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Below this argument the Stirling series is not used.
const STIRLING_MIN: f64 = 10.0;

/// Number of Taylor terms for `ln Γ(2 + z)`, `|z| <= 1/2`.
const TAYLOR_TERMS: usize = 34;

/// Taylor coefficients of `ln Γ(2 + z)` around `z = 0`:
/// `c_1 = 1 - γ`, `c_k = (-1)^k (ζ(k) - 1) / k` for `k >= 2`.
fn taylor_coefficients() -> &'static [f64; TAYLOR_TERMS] {
    static COEFFS: OnceLock<[f64; TAYLOR_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = [0.0; TAYLOR_TERMS];
        c[0] = 1.0 - EULER_GAMMA;
        for (i, slot) in c.iter_mut().enumerate().skip(1) {
            let k = (i + 1) as i32;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *slot = sign * zeta_minus_one(k) / f64::from(k);
        }
        c
    })
}

/// `ζ(k) - 1` for integer `k >= 2` by a direct sum over `2..M` plus an
/// Euler-Maclaurin tail.
fn zeta_minus_one(k: i32) -> f64 {
    const M: i32 = 64;
    let kf = f64::from(k);
    let mf = f64::from(M);
    // Tail terms are tiny compared with the leading ones; add smallest first.
    let b = |j: i32| mf.powi(-(k + j));
    let rising = |len: i32| (0..len).map(|i| kf + f64::from(i)).product::<f64>();
    let tail = mf.powi(1 - k) / (kf - 1.0) + 0.5 * b(0) + rising(1) / 12.0 * b(1)
        - rising(3) / 720.0 * b(3)
        + rising(5) / 30_240.0 * b(5)
        - rising(7) / 1_209_600.0 * b(7);
    let head: f64 = (2..M).rev().map(|n| f64::from(n).powi(-k)).sum();
    head + tail
}

/// `ln Γ(2 + z)` for `|z| <= 1/2` by its Taylor series.
fn ln_gamma_near_two(z: f64) -> f64 {
    let c = taylor_coefficients();
    let mut acc = 0.0;
    for &ck in c.iter().rev() {
        acc = acc * z + ck;
    }
    acc * z
}

/// Correction `ln Γ(y) - [(y - 1/2) ln y - y + ln √(2π)]` for `y >= 10`.
fn stirling_correction(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for &c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

/// Natural logarithm of the gamma function for positive real arguments.
///
/// The argument is reduced to `[1.5, 2.5]` by the functional equation and
/// evaluated by a Taylor series around 2 there (relative accuracy is kept
/// near the zeros at 1 and 2); large arguments use the Stirling series.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(ln_gamma_positive(x))
}

pub(crate) fn ln_gamma_positive(x: f64) -> f64 {
    if x >= STIRLING_MIN {
        return (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_correction(x);
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x; ln Γ(x) >= ln Γ(1/2) here so no root issues.
        return ln_gamma_positive(x + 1.0) - x.ln();
    }
    if x < 1.5 {
        // z = x - 1 is exact for x in [0.5, 1.5).
        let z = x - 1.0;
        return ln_gamma_near_two(z) - z.ln_1p();
    }
    if x <= 2.5 {
        return ln_gamma_near_two(x - 2.0);
    }
    // Shift down into [1.5, 2.5): Γ(x) = (x-1)(x-2)...(x-m) Γ(x-m).
    let mut y = x;
    let mut prod = 1.0;
    while y > 2.5 {
        y -= 1.0;
        prod *= y;
    }
    ln_gamma_near_two(y - 2.0) + prod.ln()
}

/// `ln Γ(x + a) - ln Γ(x + b)` without forming the two large logarithms when
/// `x` is large.
pub fn ln_gamma_ratio(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(x + a > 0.0 && x + b > 0.0) {
        return Err(Error::Domain(format!(
            "ln_gamma_ratio requires x + a > 0 and x + b > 0 (x = {x}, a = {a}, b = {b})"
        )));
    }
    Ok(ln_gamma_ratio_unchecked(x, a, b))
}

fn ln_gamma_ratio_unchecked(x: f64, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if x + a.min(b) >= STIRLING_MIN && x > a.abs().max(b.abs()) {
        let la = (a / x).ln_1p();
        let lb = (b / x).ln_1p();
        (a - b) * x.ln() + (x + a - 0.5) * la - (x + b - 0.5) * lb - (a - b)
            + stirling_correction(x + a)
            - stirling_correction(x + b)
    } else {
        ln_gamma_positive(x + a) - ln_gamma_positive(x + b)
    }
}

/// Rising factorial `(a)_k = a (a + 1) ... (a + k - 1)`, with `(a)_0 = 1`.
///
/// Formed as a direct product so that zero and negative factors are exact.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).map(|i| a + i as f64).product()
}

/// `ln (a)_k` for `a > 0`.
pub fn ln_pochhammer(a: f64, k: usize) -> Result<f64> {
    if a.is_nan() || a <= 0.0 {
        return Err(Error::Domain(format!(
            "ln_pochhammer requires a > 0, got {a}"
        )));
    }
    Ok(ln_gamma_ratio_unchecked(a, k as f64, 0.0))
}

/// Up to this `k`, [`gen_binomial`] multiplies out `Π (a+i)/i` in
/// double-double, which is exact for small integer results.
const BINOMIAL_PRODUCT_MAX: usize = 128;

/// Generalized binomial coefficient `C(a + k, k) = Γ(a + k + 1) / (Γ(k + 1) Γ(a + 1))`.
pub fn gen_binomial(a: f64, k: usize) -> Result<f64> {
    let ln = ln_gen_binomial(a, k)?;
    if k <= BINOMIAL_PRODUCT_MAX {
        let mut acc = Dd::ONE;
        for i in 1..=k {
            acc = acc * (Dd::sum(a, i as f64) / Dd::from_f64(i as f64));
        }
        let v = acc.to_f64();
        if v.is_finite() && v > 0.0 {
            return Ok(v);
        }
    }
    Ok(ln.exp())
}

/// Logarithm of [`gen_binomial`].
pub fn ln_gen_binomial(a: f64, k: usize) -> Result<f64> {
    if a.is_nan() || a <= -1.0 {
        return Err(Error::Domain(format!(
            "gen_binomial requires a > -1, got {a}"
        )));
    }
    if k == 0 {
        return Ok(0.0);
    }
    let kf = k as f64;
    Ok(ln_gamma_positive(a + kf + 1.0) - ln_gamma_positive(kf + 1.0) - ln_gamma_positive(a + 1.0))
}

/// `ln n!`.
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma_positive(n as f64 + 1.0)
}

/// Two-sided Stirling bound on `2^n n! / (2n)!`, all in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingSandwich {
    pub ln_lower: f64,
    pub ln_value: f64,
    pub ln_upper: f64,
}

impl StirlingSandwich {
    pub fn lower(&self) -> f64 {
        self.ln_lower.exp()
    }
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }
    pub fn upper(&self) -> f64 {
        self.ln_upper.exp()
    }
    pub fn holds(&self) -> bool {
        self.ln_lower <= self.ln_value && self.ln_value <= self.ln_upper
    }
}

/// Evaluates `2^n n! / (2n)!` together with the bounds
/// `√(πn) / (2^n n!) · exp(2/(12n+1) - 1/(24n))` (lower) and
/// `√(πn) / (2^n n!) · exp(1/(6n) - 1/(24n+1))` (upper).
pub fn stirling_sandwich(n: usize) -> Result<StirlingSandwich> {
    if n == 0 {
        return Err(Error::Domain("stirling_sandwich requires n >= 1".into()));
    }
    let nf = n as f64;
    let ln_fact = ln_factorial(n);
    // ln((2n)! / n!) = ln (n+1)_n
    let ln_value = nf * LN_2 - ln_gamma_ratio_unchecked(nf + 1.0, nf, 0.0);
    let ln_prefactor = 0.5 * (PI * nf).ln() - nf * LN_2 - ln_fact;
    let ln_lower = ln_prefactor + 2.0 / (12.0 * nf + 1.0) - 1.0 / (24.0 * nf);
    let ln_upper = ln_prefactor + 1.0 / (6.0 * nf) - 1.0 / (24.0 * nf + 1.0);
    Ok(StirlingSandwich {
        ln_lower,
        ln_value,
        ln_upper,
    })
}

/// Residual of the first-order expansion of a gamma ratio:
/// `N^(b-a) Γ(N+a)/Γ(N+b) - 1 - (a-b)(a+b-1)/(2N)`, which is `O(N^-2)`.
pub fn gamma_ratio_residual(a: f64, b: f64, big_n: u64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!(
            "gamma_ratio_residual requires a, b > 0 (a = {a}, b = {b})"
        )));
    }
    if big_n == 0 {
        return Err(Error::Domain("gamma_ratio_residual requires N >= 1".into()));
    }
    let nf = big_n as f64;
    let first_order = (a - b) * (a + b - 1.0) / (2.0 * nf);
    if a == b {
        return Ok(0.0 - first_order);
    }
    // ln of N^(b-a) Γ(N+a)/Γ(N+b); the (a-b) ln N terms cancel analytically
    // in the large-N branch.
    let ln_ratio = if nf + a.min(b) >= STIRLING_MIN && nf > a.max(b) {
        let la = (a / nf).ln_1p();
        let lb = (b / nf).ln_1p();
        (nf + a - 0.5) * la - (nf + b - 0.5) * lb - (a - b) + stirling_correction(nf + a)
            - stirling_correction(nf + b)
    } else {
        (b - a) * nf.ln() + ln_gamma_positive(nf + a) - ln_gamma_positive(nf + b)
    };
    Ok(ln_ratio.exp_m1() - first_order)
}
