//! Test functions with optional certified bounds on their derivatives.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hahn::HahnParams;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type DerivativeBound = Arc<dyn Fn(usize) -> Option<f64> + Send + Sync>;

/// A named function on `[-1, 1]`.
///
/// `derivative_sup(k)`, when present, returns an upper bound on
/// `sup |f^{(k)}|` over `[-1, 1]`, or `None` if no bound is known for that
/// order.
#[derive(Clone)]
pub struct FunctionSpec {
    name: String,
    evaluator: Evaluator,
    derivative_sup: Option<DerivativeBound>,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("name", &self.name)
            .field("has_derivative_bounds", &self.derivative_sup.is_some())
            .finish()
    }
}

impl FunctionSpec {
    pub fn new(
        name: impl Into<String>,
        evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        FunctionSpec {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            derivative_sup: None,
        }
    }

    pub fn with_derivative_sup(
        mut self,
        bound: impl Fn(usize) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        self.derivative_sup = Some(Arc::new(bound));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.evaluator)(t)
    }

    /// Evaluates and rejects non-finite values.
    pub fn eval_checked(&self, t: f64) -> Result<f64> {
        let v = self.eval(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                function: self.name.clone(),
                t,
            })
        }
    }

    pub fn derivative_sup(&self, order: usize) -> Option<f64> {
        self.derivative_sup.as_ref().and_then(|b| b(order))
    }

    pub fn has_derivative_bounds(&self) -> bool {
        self.derivative_sup.is_some()
    }

    pub fn const1() -> Self {
        Self::polynomial("const1", vec![1.0])
    }

    pub fn linear() -> Self {
        Self::polynomial("linear", vec![0.0, 1.0])
    }

    /// `Σ c_j t^j`. The derivative bound is `Σ_{j>=k} |c_j| j!/(j-k)!`.
    pub fn polynomial(name: impl Into<String>, coeffs: Vec<f64>) -> Self {
        let c = coeffs.clone();
        let eval = move |t: f64| c.iter().rev().fold(0.0, |acc, &cj| acc * t + cj);
        Self::new(name, eval).with_derivative_sup(move |k| {
            Some(
                coeffs
                    .iter()
                    .enumerate()
                    .skip(k)
                    .map(|(j, cj)| cj.abs() * ((j - k + 1)..=j).map(|i| i as f64).product::<f64>())
                    .sum(),
            )
        })
    }

    /// `e^t`; every derivative is bounded by `e`.
    pub fn exp() -> Self {
        Self::new("exp", f64::exp).with_derivative_sup(|_| Some(std::f64::consts::E))
    }

    /// `sin(kt)`; the `m`-th derivative is bounded by `|k|^m`.
    pub fn sin(k: f64) -> Self {
        Self::new(format!("sin{k}"), move |t| (k * t).sin())
            .with_derivative_sup(move |m| Some(k.abs().powi(m as i32)))
    }

    /// `1 / (1 + 25 t²)`, without derivative bounds.
    pub fn runge() -> Self {
        Self::new("runge", |t| 1.0 / (1.0 + 25.0 * t * t))
    }

    /// Looks up a registry name: `const1`, `linear`, `poly:<c0,c1,...>`,
    /// `exp`, `sin<k>`, `runge`, `extremal:<n>`. The extremal witness needs
    /// the grid parameters.
    pub fn from_registry(name: &str, params: Option<&HahnParams>) -> Result<Self> {
        match name {
            "const1" => return Ok(Self::const1()),
            "linear" => return Ok(Self::linear()),
            "exp" => return Ok(Self::exp()),
            "runge" => return Ok(Self::runge()),
            _ => {}
        }
        if let Some(list) = name.strip_prefix("poly:") {
            let coeffs = list
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parameter(format!("bad polynomial `{name}`: {e}")))?;
            if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::Parameter(format!("bad polynomial `{name}`")));
            }
            return Ok(Self::polynomial(name, coeffs));
        }
        if let Some(rest) = name.strip_prefix("extremal:") {
            let n = rest
                .parse::<usize>()
                .map_err(|e| Error::Parameter(format!("bad degree in `{name}`: {e}")))?;
            let params = params.ok_or_else(|| {
                Error::Parameter("the extremal function needs alpha and N".into())
            })?;
            return crate::lsq::extremal_function(n, params);
        }
        if let Some(k) = name.strip_prefix("sin") {
            let k = k
                .parse::<f64>()
                .ok()
                .filter(|k| k.is_finite())
                .ok_or_else(|| Error::Parameter(format!("bad frequency in `{name}`")))?;
            let mut f = Self::sin(k);
            f.name = name.to_string();
            return Ok(f);
        }
        Err(Error::Parameter(format!("unknown function `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        for name in [
            "const1",
            "linear",
            "exp",
            "runge",
            "sin2",
            "sin4",
            "poly:1,0,-2",
        ] {
            let f = FunctionSpec::from_registry(name, None).unwrap();
            assert_eq!(f.name(), name);
        }
        assert!(FunctionSpec::from_registry("cosh", None).is_err());
        assert!(FunctionSpec::from_registry("poly:1,x", None).is_err());
        assert!(FunctionSpec::from_registry("extremal:1", None).is_err());
        assert!(FunctionSpec::from_registry("sinx", None).is_err());
    }

    #[test]
    fn polynomial_derivative_bounds() {
        let p = FunctionSpec::from_registry("poly:1,-2,0,4", None).unwrap();
        assert_eq!(p.eval(0.5), 1.0 - 1.0 + 0.5);
        assert_eq!(p.derivative_sup(0), Some(7.0));
        assert_eq!(p.derivative_sup(1), Some(2.0 + 12.0));
        assert_eq!(p.derivative_sup(3), Some(24.0));
        assert_eq!(p.derivative_sup(4), Some(0.0));
    }

    #[test]
    fn runge_has_no_certificate() {
        let r = FunctionSpec::runge();
        assert!(!r.has_derivative_bounds());
        assert_eq!(r.derivative_sup(3), None);
        assert_eq!(r.eval(0.2), 0.5);
    }

    #[test]
    fn sin_bounds() {
        let s = FunctionSpec::sin(4.0);
        assert_eq!(s.derivative_sup(3), Some(64.0));
    }

    #[test]
    fn non_finite_values_are_reported() {
        let f = FunctionSpec::new("pole", |t| 1.0 / t);
        assert!(matches!(f.eval_checked(0.0), Err(Error::Evaluation { .. })));
    }
}
