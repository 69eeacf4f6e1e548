use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "bergmanlab", version, about = "Bergman and Hardy space norms, distribution profiles and stability checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norms of each function with quadrature/coefficient cross-checks.
    Norm(RunArgs),
    /// Distribution profile ρ(t) against ρ₀(t), with H(t) or Φ(t).
    Profile(RunArgs),
    /// Run one named check over the function source; one record per point.
    Verify(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm(_) => "norm",
            Command::Profile(_) => "profile",
            Command::Verify(_) => "verify",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Norm(a) | Command::Profile(a) | Command::Verify(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Kulikov,
    Theorem1,
    Corollary2,
    Theorem3,
    Concentration,
    Lemma4,
    Lemma5,
    Unitarity,
    HardyRemark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Derived,
    Displayed,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    /// Check to run (verify only).
    #[arg(long)]
    pub check: Option<Check>,

    /// Weight α > -1; α = -1 selects the Hardy space.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 4.0)]
    pub q: f64,
    /// Exponent r of the convex test function G(t) = t^r.
    #[arg(long = "g-power", default_value_t = 2.0)]
    pub g_power: f64,
    /// The constant C: of M_α (default 1), or of the refined distribution
    /// bound for theorem3 and lemma5 (default 4).
    #[arg(long = "const-C")]
    pub const_c: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub t0: f64,
    #[arg(long = "T0", default_value_t = 0.9)]
    pub big_t0: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Angular nodes of the level-set engine.
    #[arg(long, default_value_t = 512)]
    pub nodes: usize,
    /// Tolerance override for checks that take one.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Coefficient file: JSON array of [re, im] pairs.
    #[arg(long, conflicts_with = "function")]
    pub input: Option<PathBuf>,
    /// Builtin function: one, z, one-plus-z, kernel:RE,IM.
    #[arg(long)]
    pub function: Option<String>,
    /// Mixed-state file for lemma4.
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Spectral-function file for unitarity.
    #[arg(long)]
    pub spectral: Option<PathBuf>,
    /// Number of seeded random functions when no file or builtin is given.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long = "max-rank", default_value_t = 4)]
    pub max_rank: usize,
    /// Hyperbolic measures s of the concentration disks.
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<f64>,
    #[arg(long = "t-min", default_value_t = 1e-3)]
    pub t_min: f64,
    #[arg(long, default_value_t = 40)]
    pub points: usize,
    #[arg(long = "coefficient-form", value_enum, default_value_t = Form::Derived)]
    pub coefficient_form: Form,
    #[arg(long = "remark-form", value_enum, default_value_t = Form::Derived)]
    pub remark_form: Form,
}

impl RunArgs {
    pub fn validate(&self, command: &str) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.alpha >= -1.0) || !self.alpha.is_finite() {
            return bad(format!("--alpha must be ≥ -1, got {}", self.alpha));
        }
        for (name, v) in [
            ("--p", self.p),
            ("--q", self.q),
            ("--const-C", self.const_c.unwrap_or(1.0)),
            ("--t-min", self.t_min),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("{name} must be finite and > 0, got {v}"));
            }
        }
        if !(self.g_power > 1.0) {
            return bad(format!("--g-power must be > 1, got {}", self.g_power));
        }
        for (name, v) in [("--t0", self.t0), ("--T0", self.big_t0)] {
            if !(v > 0.0 && v < 1.0) {
                return bad(format!("{name} must lie in (0, 1), got {v}"));
            }
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) || !tol.is_finite() {
                return bad(format!("--tol must be > 0, got {tol}"));
            }
        }
        if self.nodes < 8 {
            return bad(format!("--nodes must be ≥ 8, got {}", self.nodes));
        }
        if self.count == Some(0) || self.max_rank == 0 || self.points == 0 {
            return bad("--count, --max-rank and --points must be ≥ 1".into());
        }
        if let Some(s) = self.s.iter().find(|s| !(**s > 0.0) || !s.is_finite()) {
            return bad(format!("--s values must be > 0, got {s}"));
        }
        if command == "verify" && self.check.is_none() {
            return bad("verify needs --check".into());
        }
        if command != "verify" && self.check.is_some() {
            return bad("--check applies to verify only".into());
        }
        Ok(())
    }

    pub fn count(&self, command: &str) -> usize {
        self.count.unwrap_or(if command == "verify" { 20 } else { 1 })
    }

    pub fn constant_c(&self) -> f64 {
        let refined = matches!(self.check, Some(Check::Theorem3 | Check::Lemma5));
        self.const_c.unwrap_or(if refined { 4.0 } else { 1.0 })
    }

    pub fn disk_sizes(&self) -> Vec<f64> {
        if self.s.is_empty() {
            vec![PI / 2.0, PI, 4.0 * PI]
        } else {
            self.s.clone()
        }
    }
}

/// SHA-256 over the canonical JSON of the run plus the bytes of every input file.
pub fn config_hash(command: &str, args: &RunArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Hashed<'a> {
        command: &'a str,
        args: &'a RunArgs,
    }
    let json = serde_json::to_vec(&Hashed { command, args }).map_err(|e| CliError::Config(e.to_string()))?;
    let mut h = Sha256::new();
    h.update(&json);
    for path in [&args.input, &args.state, &args.spectral].into_iter().flatten() {
        let bytes = std::fs::read(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        h.update(&bytes);
    }
    Ok(hex::encode(h.finalize()))
}
