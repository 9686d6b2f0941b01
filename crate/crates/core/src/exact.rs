//! Exact rational arithmetic for oracle checks.
//!
//! Everything here works on [`RationalScalar`] and is only practical for
//! small grids and degrees. It is deliberately independent of the
//! floating-point evaluation paths so that those can be checked against it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hahn::HahnParams;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type RationalScalar = BigRational;

pub fn int(v: i64) -> RationalScalar {
    RationalScalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> RationalScalar {
    RationalScalar::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion of a finite double.
pub fn from_f64(x: f64) -> Result<RationalScalar> {
    RationalScalar::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

pub fn to_f64(x: &RationalScalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn pochhammer(a: &RationalScalar, k: usize) -> RationalScalar {
    let mut acc = RationalScalar::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += RationalScalar::one();
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Hahn parameters with nonnegative integer `alpha`, `beta`, the setting in
/// which the weights are integers and every quantity is rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactParams {
    pub alpha: u32,
    pub beta: u32,
    pub big_n: usize,
}

impl ExactParams {
    pub fn new(alpha: u32, beta: u32, big_n: usize) -> Self {
        ExactParams { alpha, beta, big_n }
    }

    /// Succeeds only when both exponents are nonnegative integers.
    pub fn from_params(p: &HahnParams) -> Option<Self> {
        let as_int = |v: f64| (v >= 0.0 && v.fract() == 0.0 && v <= 1e6).then_some(v as u32);
        Some(ExactParams {
            alpha: as_int(p.alpha)?,
            beta: as_int(p.beta)?,
            big_n: p.big_n,
        })
    }

    fn alpha_q(&self) -> RationalScalar {
        int(i64::from(self.alpha))
    }

    fn beta_q(&self) -> RationalScalar {
        int(i64::from(self.beta))
    }

    /// `ω(i) = C(α+i, i) C(β+N-i, N-i)`.
    pub fn weight(&self, i: usize) -> RationalScalar {
        let a = self.alpha as usize;
        let b = self.beta as usize;
        let w = binomial(a + i, i) * binomial(b + self.big_n - i, self.big_n - i);
        RationalScalar::from_integer(w)
    }

    pub fn weights(&self) -> Vec<RationalScalar> {
        (0..=self.big_n).map(|i| self.weight(i)).collect()
    }

    /// `Q_n(x)` from the terminating hypergeometric sum.
    pub fn hahn(&self, n: usize, x: &RationalScalar) -> RationalScalar {
        assert!(n <= self.big_n, "degree {n} exceeds N = {}", self.big_n);
        let neg_n = int(-(n as i64));
        let upper = int(n as i64 + 1) + self.alpha_q() + self.beta_q();
        let neg_x = -x.clone();
        let lower_a = self.alpha_q() + RationalScalar::one();
        let neg_big_n = int(-(self.big_n as i64));
        let mut sum = RationalScalar::zero();
        for k in 0..=n {
            let num = pochhammer(&neg_n, k) * pochhammer(&upper, k) * pochhammer(&neg_x, k);
            if num.is_zero() {
                continue;
            }
            let den = pochhammer(&lower_a, k)
                * pochhammer(&neg_big_n, k)
                * RationalScalar::from_integer(factorial(k));
            sum += num / den;
        }
        sum
    }

    /// Closed-form `<Q_k, Q_k>_ω`.
    pub fn norm_sq(&self, k: usize) -> RationalScalar {
        let a = self.alpha_q();
        let b = self.beta_q();
        let kq = int(k as i64);
        let one = RationalScalar::one();
        let sign = if k.is_multiple_of(2) {
            one.clone()
        } else {
            -one.clone()
        };
        let num = sign
            * pochhammer(&(kq.clone() + &a + &b + &one), self.big_n + 1)
            * pochhammer(&(b + &one), k)
            * RationalScalar::from_integer(factorial(k));
        let den = (int(2 * k as i64) + &a + self.beta_q() + &one)
            * pochhammer(&(a + &one), k)
            * pochhammer(&int(-(self.big_n as i64)), k)
            * RationalScalar::from_integer(factorial(self.big_n));
        num / den
    }

    /// Values of `Q_0..=Q_n_max` on the integer grid, indexed `[k][i]`.
    pub fn hahn_grid(&self, n_max: usize) -> Vec<Vec<RationalScalar>> {
        (0..=n_max)
            .map(|k| {
                (0..=self.big_n)
                    .map(|i| self.hahn(k, &int(i as i64)))
                    .collect()
            })
            .collect()
    }
}

/// `Σ f_i g_i w_i`.
pub fn inner_product(
    f: &[RationalScalar],
    g: &[RationalScalar],
    w: &[RationalScalar],
) -> RationalScalar {
    f.iter()
        .zip(g)
        .zip(w)
        .fold(RationalScalar::zero(), |acc, ((a, b), c)| acc + a * b * c)
}

/// Solves `A x = b` by Gaussian elimination with nonzero pivoting.
pub fn solve(
    mut a: Vec<Vec<RationalScalar>>,
    mut b: Vec<RationalScalar>,
) -> Result<Vec<RationalScalar>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: a.len(),
        });
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Domain("singular system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        let pivot_row = a[col].clone();
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for (c, p) in pivot_row.iter().enumerate().skip(col) {
                a[r][c] -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![RationalScalar::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in (row + 1)..n {
            acc -= &a[row][c] * &x[c];
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn normalization_invariant() {
        let q = ratio(6, -4);
        assert_eq!(q, ratio(-3, 2));
        assert!(q.denom().is_positive());
    }

    #[test]
    fn weights_for_alpha_one() {
        let p = ExactParams::new(1, 1, 2);
        assert_eq!(p.weights(), vec![int(3), int(4), int(3)]);
    }

    #[test]
    fn hahn_hand_expansion() {
        let p = ExactParams::new(0, 0, 4);
        for x in 0..=4 {
            let xq = int(x);
            let expected = int(1) - int(2) * &xq + &xq * &xq / int(2);
            assert_eq!(p.hahn(2, &xq), expected);
        }
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(a, vec![int(3), int(5)]).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
    }

    #[test]
    fn f64_round_trip() {
        for &v in &[0.1, -3.25, 1e-300, 6.02e23] {
            assert_eq!(to_f64(&from_f64(v).unwrap()), v);
        }
        assert!(from_f64(f64::NAN).is_err());
    }
}
