//! Command-line arguments and their validation into an [`ExperimentConfig`].

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hahn_lsq::bounds::min_nodes;
use hahn_lsq::hahn::{STABLE_MAX_DEGREE, STABLE_MAX_GRID};
use serde_json::{json, Value as Json};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Weights, Hahn values, norms, orthogonality residuals, endpoint checks
    Basis,
    /// Least-squares fit of a registry function with its error report
    Fit,
    /// Worst-case constants and thresholds per degree
    Bounds,
    /// Measured error of the extremal function against the worst-case constant
    Sharpness,
    /// Error of a fixed function along a degree sweep
    Convergence,
    /// Discrete versus continuous constants under several node rules
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Basis => "basis",
            Command::Fit => "fit",
            Command::Bounds => "bounds",
            Command::Sharpness => "sharpness",
            Command::Convergence => "convergence",
            Command::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NodeRule {
    /// `⌈(2n² + (4α+2)n) / (2α+1)⌉`
    C3,
    /// `2n(n+1)`, for α >= 0
    C4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "hahn-lsq",
    version,
    about = "Discrete least squares on equidistant nodes"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Weight exponent α
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Weight exponent β (defaults to α)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Degree
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,
    /// Inclusive degree range `A..B`
    #[arg(long)]
    pub n_range: Option<String>,
    /// Grid parameter N (the grid has N + 1 nodes)
    #[arg(long = "nodes", visible_alias = "N", conflicts_with = "node_rule")]
    pub nodes: Option<usize>,
    /// Choose N from the degree
    #[arg(long, value_enum)]
    pub node_rule: Option<NodeRule>,
    /// Registry name: const1, linear, poly:<c0,c1,...>, exp, sin<k>, runge, extremal:<n>
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Recorded in the output config; no command draws random numbers
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nodes {
    Explicit(usize),
    Rule(NodeRule),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub alpha: f64,
    pub beta: f64,
    pub degrees: Vec<usize>,
    pub nodes: Option<Nodes>,
    pub function: Option<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = || CliError::Config(format!("--n-range must look like A..B, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(CliError::Config(format!("--n-range is empty: {a} > {b}")));
    }
    Ok((a..=b).collect())
}

fn needs(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Config(msg.to_string()))
    }
}

impl ExperimentConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let beta = cli.beta.unwrap_or(cli.alpha);
        for (name, v) in [("alpha", cli.alpha), ("beta", beta)] {
            needs(
                v.is_finite() && v > -1.0,
                &format!("--{name} must be a finite number > -1"),
            )?;
        }
        let degrees = match (&cli.n, &cli.n_range) {
            (Some(n), None) => vec![*n],
            (None, Some(r)) => parse_range(r)?,
            (None, None) => {
                return Err(CliError::Config(
                    "one of --n or --n-range is required".into(),
                ))
            }
            (Some(_), Some(_)) => unreachable!("clap rejects --n with --n-range"),
        };
        let nodes = match (cli.nodes, cli.node_rule) {
            (Some(n), _) => Some(Nodes::Explicit(n)),
            (None, Some(r)) => Some(Nodes::Rule(r)),
            (None, None) => None,
        };
        let config = ExperimentConfig {
            command: cli.command,
            alpha: cli.alpha,
            beta,
            degrees,
            nodes,
            function: cli.function,
            format: cli.format,
            out: cli.out,
            seed: cli.seed,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let symmetric = self.alpha == self.beta;
        let sym_msg = format!("`{}` needs alpha = beta", self.command.name());
        match self.command {
            Command::Basis | Command::Fit => {
                needs(
                    self.degrees.len() == 1,
                    &format!("`{}` takes a single --n", self.command.name()),
                )?;
            }
            Command::Bounds | Command::Sharpness | Command::Compare => needs(symmetric, &sym_msg)?,
            Command::Convergence => {}
        }
        match self.command {
            Command::Fit | Command::Convergence => {
                needs(self.function.is_some(), "--function is required")?;
            }
            _ => needs(
                self.function.is_none(),
                &format!("`{}` does not take --function", self.command.name()),
            )?,
        }
        if self.command != Command::Compare {
            needs(
                self.nodes.is_some(),
                "one of --nodes or --node-rule is required",
            )?;
        }
        if let Some(Nodes::Explicit(n)) = self.nodes {
            needs(n >= 1, "--nodes must be at least 1")?;
        }
        if let Some(Nodes::Rule(rule)) = self.nodes {
            needs(self.alpha > -0.5, "node rules need alpha > -1/2")?;
            needs(symmetric, "node rules need alpha = beta")?;
            if rule == NodeRule::C4 {
                needs(self.alpha >= 0.0, "node rule c4 needs alpha >= 0")?;
            }
        }
        for &n in &self.degrees {
            if let Some(big_n) = self.grid_size(n)? {
                needs(n <= big_n, &format!("degree {n} exceeds N = {big_n}"))?;
                if self.evaluates_polynomials()
                    && (n > STABLE_MAX_DEGREE || big_n > STABLE_MAX_GRID)
                {
                    return Err(hahn_lsq::Error::Instability(format!(
                        "n = {n}, N = {big_n} is outside the validated range (n <= {STABLE_MAX_DEGREE}, N <= {STABLE_MAX_GRID})"
                    ))
                    .into());
                }
            }
        }
        Ok(())
    }

    /// Commands that evaluate Hahn polynomials, as opposed to closed-form
    /// constants only.
    pub fn evaluates_polynomials(&self) -> bool {
        !matches!(self.command, Command::Bounds | Command::Compare)
    }

    /// The grid parameter for degree `n`, if one is configured.
    pub fn grid_size(&self, n: usize) -> Result<Option<usize>> {
        Ok(match self.nodes {
            None => None,
            Some(Nodes::Explicit(big_n)) => Some(big_n),
            Some(Nodes::Rule(rule)) => {
                let counts = min_nodes(n, self.alpha)?;
                Some(match rule {
                    NodeRule::C3 => counts.c3,
                    NodeRule::C4 => counts.c4,
                })
            }
        })
    }

    pub fn to_json(&self) -> Json {
        let mut obj = json!({
            "command": self.command.name(),
            "alpha": self.alpha,
            "beta": self.beta,
            "degrees": self.degrees,
        });
        let map = obj.as_object_mut().expect("object");
        match self.nodes {
            Some(Nodes::Explicit(n)) => {
                map.insert("nodes".into(), json!(n));
            }
            Some(Nodes::Rule(r)) => {
                let name = match r {
                    NodeRule::C3 => "c3",
                    NodeRule::C4 => "c4",
                };
                map.insert("node_rule".into(), json!(name));
            }
            None => {}
        }
        if let Some(f) = &self.function {
            map.insert("function".into(), json!(f));
        }
        if let Some(s) = self.seed {
            map.insert("seed".into(), json!(s));
        }
        obj
    }
}
