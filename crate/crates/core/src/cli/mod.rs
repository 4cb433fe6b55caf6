//! Command-line front end.
//!
//! Configuration is layered: command-line flags, then an optional
//! `key = value` file (`--config`), then the case's own defaults. The seed
//! falls back to `HARDY_SEED` and finally to 42.
//!
//! Exit status: 0 all pass, 2 any fail, 3 only inconclusive (no fail),
//! 1 configuration or parameter errors.

mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{lookup, registry, ParamOverrides};
use crate::derivation::{estimate_cp, CpCache, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::verify::{
    estimate_best_constant, hpw_reports, power_family, verify_suite, HpwVariant, SuiteSummary, VerificationReport,
    DEFAULT_EPSILONS,
};

pub use config::{ConfigFile, RunConfig};
pub use output::{format_cp, write_atomic};

/// Default quadrature when neither flag nor config file gives one.
pub const DEFAULT_QUAD: &str = "mc:200000";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hardy", about = "Numerical checks of weighted Hardy inequalities with boundary terms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One line per catalog entry: id, hypothesis, description.
    ListCases,
    /// Check an entry (or all) over the test-function suite.
    Verify(CommonArgs),
    /// Quotient sequence approaching the best constant of one interior term.
    Sharpness {
        #[command(flatten)]
        common: CommonArgs,
        /// Index of the interior term whose constant is estimated.
        #[arg(long, default_value_t = 0)]
        term: usize,
        /// Comma-separated ε values for φ_ε = u|x|^ε(1 − |x/R|²).
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
    },
    /// Product inequalities obtained by optimising over α.
    Hpw {
        #[command(flatten)]
        common: CommonArgs,
        /// gaussian, exp-radial, xn2, cylindrical or all.
        #[arg(long, default_value = "all")]
        variant: String,
    },
    /// Table of the convexity constant c_p.
    CpTable {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Read and extend a `p = c_p` cache file.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Catalog id, or "all".
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long = "R", alias = "radius")]
    pub radius: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// `mc:N[:seed=S]` or `radial:K:mc:D[:seed=S]`.
    #[arg(long)]
    pub quad: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Add the convexity remainder to the right-hand side.
    #[arg(long)]
    pub remainder: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// `key = value` configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    pub fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            n: self.n,
            p: self.p,
            radius: self.radius,
            alpha: self.alpha,
            gamma: self.gamma,
            m: self.m,
            s: self.s,
            t: self.t,
        }
    }
}

/// Exit status for a set of verdicts.
pub fn exit_status(summary: &SuiteSummary) -> i32 {
    if summary.fail > 0 {
        2
    } else if summary.inconclusive > 0 {
        3
    } else {
        0
    }
}

/// Parses `args` (program name first), runs, and returns the exit status.
/// Reports go to `out` unless an output path is configured.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::ListCases => {
            for e in registry() {
                writeln!(out, "{}\t{}\t{}", e.id, e.hypothesis, e.label)?;
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let cfg = RunConfig::resolve(args)?;
            let reports = run_verify(&cfg)?;
            emit_reports(&cfg, &reports, out)
        }
        Command::Hpw { common, variant } => {
            let cfg = RunConfig::resolve(common)?;
            let variants: Vec<HpwVariant> =
                if variant == "all" { HpwVariant::ALL.to_vec() } else { vec![variant.parse()?] };
            let mut reports = Vec::new();
            for v in variants {
                reports.extend(hpw_reports(v, cfg.hpw_dim(), cfg.hpw_radius(), &cfg.quad)?);
            }
            emit_reports(&cfg, &reports, out)
        }
        Command::Sharpness { common, term, eps } => {
            let cfg = RunConfig::resolve(common)?;
            let id = cfg.case.as_str();
            if id == "all" {
                return Err(Error::Config("sharpness needs a single --case".into()));
            }
            let case = lookup(id)?.build(&cfg.params_for(id)?)?;
            let eps = eps.clone().unwrap_or_else(|| DEFAULT_EPSILONS.to_vec());
            let rep = estimate_best_constant(&case, *term, &power_family(&case, &eps), &cfg.quad)?;
            let body = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&rep)? + "\n",
                Format::Csv => output::sharpness_csv(&rep)?,
            };
            output::deliver(&cfg, &body, out)?;
            Ok(0)
        }
        Command::CpTable { p, grid, cache } => {
            let mut table = match cache {
                Some(path) if path.exists() => CpCache::load(path)?,
                _ => CpCache::default(),
            };
            writeln!(out, "p\tc_p\tregime")?;
            for &pv in p {
                let c = match table.get(pv) {
                    Some(c) => c,
                    None => {
                        let c = estimate_cp(pv, *grid)?.c_p;
                        table.insert(pv, c);
                        c
                    }
                };
                let regime = if pv >= 2.0 { "degenerate" } else { "singular" };
                writeln!(out, "{}\t{}\t{regime}", format_cp(pv), format_cp(c))?;
            }
            if let Some(path) = cache {
                table.save(path)?;
            }
            Ok(0)
        }
    }
}

/// All reports for a `verify` run: the suite of each selected case, and for
/// `all` the four HPW variants as well.
pub fn run_verify(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let ids: Vec<&str> = if cfg.case == "all" { registry().iter().map(|e| e.id).collect() } else { vec![cfg.case.as_str()] };
    // validate every hypothesis before integrating anything
    let cases = ids
        .iter()
        .map(|id| lookup(id)?.build(&cfg.params_for(id)?))
        .collect::<Result<Vec<_>>>()?;
    let mut reports = Vec::new();
    for case in &cases {
        reports.extend(verify_suite(case, &cfg.quad, cfg.include_remainder)?);
    }
    if cfg.case == "all" {
        for v in HpwVariant::ALL {
            reports.extend(hpw_reports(v, cfg.hpw_dim(), cfg.hpw_radius(), &cfg.quad)?);
        }
    }
    Ok(reports)
}

fn emit_reports(cfg: &RunConfig, reports: &[VerificationReport], out: &mut dyn Write) -> Result<i32> {
    let summary = SuiteSummary::of(reports);
    let body = match cfg.format {
        Format::Json => output::reports_json(reports, &summary)?,
        Format::Csv => output::reports_csv(reports)?,
    };
    output::deliver(cfg, &body, out)?;
    Ok(exit_status(&summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hardy").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn list_cases_has_every_entry() {
        let (code, out, _) = run_str(&["list-cases"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 16);
        assert!(out.lines().next().unwrap().starts_with("power\tn+α>p>1\t"));
    }

    #[test]
    fn invalid_parameters_echo_hypothesis() {
        let (code, _, err) = run_str(&["verify", "--case", "power", "--n", "2", "--p", "2", "--alpha", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("requires n+α>p>1"), "{err}");
    }

    #[test]
    fn bad_flag_is_config_error() {
        let (code, _, _) = run_str(&["verify", "--case", "power", "--bogus"]);
        assert_eq!(code, 1);
        let (code, _, err) = run_str(&["verify", "--case", "power", "--quad", "mc:oops"]);
        assert_eq!(code, 1);
        assert!(err.contains("configuration error"), "{err}");
    }

    #[test]
    fn cp_table_rows() {
        let (code, out, _) = run_str(&["cp-table", "--p", "1.5,2,3,4"]);
        assert_eq!(code, 0);
        let rows: Vec<_> = out.lines().skip(1).collect();
        assert_eq!(rows.len(), 4);
        assert!(rows[1].starts_with("2.0\t1.0\t"), "{}", rows[1]);
    }

    #[test]
    fn verify_json_is_reproducible() {
        let args = ["verify", "--case", "exp-sum-b", "--quad", "mc:2000:seed=9"];
        let (code, a, _) = run_str(&args);
        let (_, b, _) = run_str(&args);
        assert_eq!(code, 0);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert!(v["reports"].as_array().unwrap().len() >= 20);
        assert_eq!(v["summary"]["fail"], 0);
    }
}
