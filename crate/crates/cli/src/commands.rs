//! One function per subcommand, each producing a [`Table`].

use hahn_lsq::bounds::{
    bound_report, degree_threshold, ratio_discrete_continuous, worst_case_constant,
    worst_case_formula,
};
use hahn_lsq::hahn::{
    endpoint_max_check, hahn_grid_values, hahn_norm_sq, inner_product, node, normalized_hahn_eval,
    DiscreteWeight, HahnParams,
};
use hahn_lsq::jacobi::continuous_constant;
use hahn_lsq::lsq::{class_k_defect, extremal_function, fit_hahn, sup_error, theorem_bound};
use hahn_lsq::{Error, FunctionSpec};

use crate::config::{Command, ExperimentConfig, NodeRule, Nodes};
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};

/// Largest relative gap accepted between measured and predicted worst case.
pub const SHARPNESS_TOL: f64 = 1e-8;

pub fn execute(config: &ExperimentConfig) -> Result<Table> {
    match config.command {
        Command::Basis => basis(config),
        Command::Fit => fit(config),
        Command::Bounds => bounds(config),
        Command::Sharpness => sharpness(config),
        Command::Convergence => convergence(config),
        Command::Compare => compare(config),
    }
}

fn grid(config: &ExperimentConfig, n: usize) -> Result<usize> {
    config
        .grid_size(n)?
        .ok_or_else(|| CliError::Config("one of --nodes or --node-rule is required".into()))
}

fn params(config: &ExperimentConfig, n: usize) -> Result<HahnParams> {
    Ok(HahnParams::new(
        config.alpha,
        config.beta,
        grid(config, n)?,
    )?)
}

fn function(config: &ExperimentConfig, params: &HahnParams) -> Result<FunctionSpec> {
    let name = config
        .function
        .as_deref()
        .ok_or_else(|| CliError::Config("--function is required".into()))?;
    Ok(FunctionSpec::from_registry(name, Some(params))?)
}

fn basis(config: &ExperimentConfig) -> Result<Table> {
    let n = config.degrees[0];
    let p = params(config, n)?;
    let big_n = p.big_n;
    let w = DiscreteWeight::new(p)?;
    let q = hahn_grid_values(n, &p)?;
    let norms = (0..=n)
        .map(|k| hahn_norm_sq(k, &p))
        .collect::<hahn_lsq::Result<Vec<_>>>()?;

    let mut t = Table::new(vec!["quantity", "degree", "index", "position", "value"]);
    for (i, &v) in w.values().iter().enumerate() {
        t.push(vec![
            "weight".into(),
            Cell::Empty,
            i.into(),
            (i as f64).into(),
            v.into(),
        ]);
    }
    for (k, row) in q.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            t.push(vec![
                "hahn".into(),
                k.into(),
                i.into(),
                (i as f64).into(),
                v.into(),
            ]);
        }
    }
    for (k, &v) in norms.iter().enumerate() {
        t.push(vec![
            "norm_sq".into(),
            k.into(),
            Cell::Empty,
            Cell::Empty,
            v.into(),
        ]);
    }
    for j in 0..=n {
        for k in 0..=n {
            let ip = inner_product(&q[j], &q[k], &w)? / (norms[j] * norms[k]).sqrt();
            let residual = if j == k { ip - 1.0 } else { ip };
            t.push(vec![
                "orth_residual".into(),
                j.into(),
                k.into(),
                Cell::Empty,
                residual.into(),
            ]);
        }
    }
    if p.is_symmetric() {
        for k in 0..=n {
            for mu in 0..=big_n {
                let tt = node(mu, big_n);
                let v = normalized_hahn_eval(k, tt, &p)?;
                t.push(vec![
                    "normalized".into(),
                    k.into(),
                    mu.into(),
                    tt.into(),
                    v.into(),
                ]);
            }
        }
        if p.alpha > -0.5 {
            let threshold = degree_threshold(p.alpha, big_n)?;
            for k in (0..=n).filter(|&k| k as f64 <= threshold) {
                let ok = endpoint_max_check(k, p.alpha, big_n)?;
                let v = if ok { 1.0 } else { 0.0 };
                t.push(vec![
                    "endpoint".into(),
                    k.into(),
                    Cell::Empty,
                    Cell::Empty,
                    v.into(),
                ]);
            }
        }
    }
    Ok(t)
}

fn fit(config: &ExperimentConfig) -> Result<Table> {
    let n = config.degrees[0];
    let p = params(config, n)?;
    let f = function(config, &p)?;
    let approx = fit_hahn(&f, n, &p)?;
    let mut report = sup_error(&f, &approx);
    if let Some(bound) = theorem_bound(&f, n, &p) {
        report = report.with_bound(bound);
    }
    let mut t = Table::new(vec![
        "function",
        "n",
        "N",
        "k",
        "coefficient",
        "sup_error",
        "argmax",
        "bound",
        "ratio",
    ]);
    for (k, &c) in approx.coefficients.iter().enumerate() {
        t.push(vec![
            f.name().into(),
            n.into(),
            p.big_n.into(),
            k.into(),
            c.into(),
            report.sup_error.into(),
            report.argmax.into(),
            report.bound.into(),
            report.ratio.into(),
        ]);
    }
    Ok(t)
}

fn bounds(config: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(vec![
        "n",
        "N",
        "alpha",
        "threshold",
        "hypothesis_ok",
        "worst_case",
        "continuous",
        "ratio",
        "simplified",
        "node_min_c3",
        "node_min_c4",
    ]);
    for &n in &config.degrees {
        let r = bound_report(n, grid(config, n)?, config.alpha)?;
        t.push(vec![
            n.into(),
            r.big_n.into(),
            r.alpha.into(),
            r.threshold.into(),
            r.hypothesis_ok.into(),
            r.worst_case.into(),
            r.continuous.into(),
            r.ratio.into(),
            r.simplified.into(),
            r.node_min_c3.into(),
            r.node_min_c4.into(),
        ]);
    }
    Ok(t)
}

fn sharpness(config: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(vec![
        "n",
        "N",
        "alpha",
        "measured",
        "worst_case",
        "rel_gap",
        "argmax",
        "within_tolerance",
    ]);
    for &n in &config.degrees {
        let p = params(config, n)?;
        let f = extremal_function(n, &p)?;
        let approx = fit_hahn(&f, n, &p)?;
        let report = sup_error(&f, &approx);
        let d = worst_case_constant(n, p.big_n, p.alpha)?;
        let gap = ((report.sup_error - d) / d).abs();
        t.push(vec![
            n.into(),
            p.big_n.into(),
            p.alpha.into(),
            report.sup_error.into(),
            d.into(),
            gap.into(),
            report.argmax.into(),
            (gap <= SHARPNESS_TOL).into(),
        ]);
    }
    Ok(t)
}

fn convergence(config: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(vec![
        "n",
        "N",
        "sup_error",
        "argmax",
        "bound",
        "ratio",
        "class_k_defect",
    ]);
    for &n in &config.degrees {
        let p = params(config, n)?;
        let f = function(config, &p)?;
        if !f.has_derivative_bounds() {
            return Err(Error::MissingDerivativeBound {
                function: f.name().to_string(),
                order: n + 1,
            }
            .into());
        }
        let approx = fit_hahn(&f, n, &p)?;
        let mut report = sup_error(&f, &approx);
        if let Some(bound) = theorem_bound(&f, n, &p) {
            report = report.with_bound(bound);
        }
        let defect = match class_k_defect(&f, n, p.alpha) {
            Ok(v) => Some(v),
            Err(Error::MissingDerivativeBound { .. } | Error::Parameter(_)) => None,
            Err(e) => return Err(e.into()),
        };
        t.push(vec![
            n.into(),
            p.big_n.into(),
            report.sup_error.into(),
            report.argmax.into(),
            report.bound.into(),
            report.ratio.into(),
            defect.into(),
        ]);
    }
    Ok(t)
}

fn compare(config: &ExperimentConfig) -> Result<Table> {
    let alpha = config.alpha;
    let mut t = Table::new(vec![
        "n",
        "rule",
        "N",
        "worst_case",
        "continuous",
        "ratio",
        "identity_rel_err",
        "hypothesis_ok",
    ]);
    for &n in &config.degrees {
        let mut rules: Vec<(&str, usize)> = Vec::new();
        if let Some(nodes) = config.nodes {
            let label = match nodes {
                Nodes::Explicit(_) => "explicit",
                Nodes::Rule(NodeRule::C3) => "c3",
                Nodes::Rule(NodeRule::C4) => "c4",
            };
            rules.push((label, grid(config, n)?));
        }
        rules.push(("2n(n+1)", 2 * n * (n + 1)));
        rules.push(("10n^2", 10 * n * n));
        rules.push(("n^3", n * n * n));
        let c = continuous_constant(n, alpha)?;
        for (label, big_n) in rules {
            if big_n < n + 1 {
                continue;
            }
            let d = worst_case_formula(n, big_n, alpha)?;
            let r = ratio_discrete_continuous(n, big_n)?;
            let threshold = degree_threshold(alpha, big_n)?;
            t.push(vec![
                n.into(),
                label.into(),
                big_n.into(),
                d.into(),
                c.into(),
                r.into(),
                ((d - c * r) / d).abs().into(),
                ((n + 1) as f64 <= threshold).into(),
            ]);
        }
    }
    Ok(t)
}
