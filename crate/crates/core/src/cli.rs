//! `coves` command-line interface.
//!
//! Exit codes: 0 on success, 2 for input errors (unreadable or malformed
//! files, bad arguments), 3 for numerical or configuration degeneracy.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::baselines::{run_ttest, OlsReport};
use crate::coves_test::{run_coves, run_es, CovesReport};
use crate::dataset::Dataset;
use crate::diagnostics::{adjusted_quantile_curves, QuantileCurves};
use crate::error::{Error, Result};
use crate::mc_engine::{power_curve, sample_size_search, Allocation, Generator, TestId, TestSpec};
use crate::simgen::{sample_scenario, sample_targeted, EmpiricalDist, ScenarioSpec, ETA_ALTERNATIVE};
use crate::stats::Side;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "coves", version, about = "Covariate-adjusted expected shortfall test and power tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a test on a `z,d,c` CSV and write a JSON report.
    Test(TestArgs),
    /// Simulate a dataset and write it as CSV.
    Simulate(SimulateArgs),
    /// Monte Carlo power over a range of sizes.
    Power(PowerArgs),
    /// Smallest size reaching a target power.
    Samplesize(SampleSizeArgs),
    /// Quantile curves of covariate-adjusted outcomes.
    Diagnose(DiagnoseArgs),
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.75)]
    pub tau: f64,
    #[arg(long, default_value = "coves")]
    pub method: TestId,
    #[arg(long, default_value = "two")]
    pub side: Side,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Report path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where simulated data come from.
#[derive(Debug, Args, Clone)]
pub struct GeneratorArgs {
    /// Normal-model scenario 1..4.
    #[arg(long, conflicts_with = "targeted")]
    pub scenario: Option<u8>,
    /// Control-group tail inflation (scenario generator only).
    #[arg(long)]
    pub eta: Option<f64>,
    /// Override the scenario's covariate coefficient.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Empirical inverse-CDF generator with a control-group tail shift.
    #[arg(long)]
    pub targeted: bool,
    /// Outcome sample for the targeted generator (bundled stand-in if omitted).
    #[arg(long)]
    pub f: Option<PathBuf>,
    /// Covariate sample for the targeted generator (bundled stand-in if omitted).
    #[arg(long)]
    pub g: Option<PathBuf>,
}

impl GeneratorArgs {
    fn build(&self, default_eta: f64) -> Result<Generator> {
        if self.targeted {
            let f = match &self.f {
                Some(p) => EmpiricalDist::from_file(p)?,
                None => EmpiricalDist::standin_outcome(),
            };
            let g = match &self.g {
                Some(p) => EmpiricalDist::from_file(p)?,
                None => EmpiricalDist::standin_baseline(),
            };
            return Ok(Generator::Targeted { f, g });
        }
        let scenario = self
            .scenario
            .ok_or_else(|| Error::InvalidInput("either --scenario or --targeted is required".into()))?;
        let mut spec = ScenarioSpec::new(scenario, self.eta.unwrap_or(default_eta))?;
        if let Some(g) = self.gamma {
            spec = spec.with_gamma(g);
        }
        Ok(Generator::Scenario(spec))
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TestChoice {
    #[arg(long, default_value = "coves")]
    pub test: TestId,
    #[arg(long, default_value_t = 0.75)]
    pub tau: f64,
    #[arg(long, default_value = "two")]
    pub side: Side,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "equal")]
    pub allocation: Allocation,
}

impl TestChoice {
    fn spec(&self) -> Result<TestSpec> {
        check_unit("tau", self.tau)?;
        check_unit("alpha", self.alpha)?;
        Ok(TestSpec { id: self.test, tau: self.tau, side: self.side })
    }
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub test: TestChoice,
    /// Control-group sizes as `start:stop:step` or a comma list.
    #[arg(long, default_value = "20:200:20")]
    pub sizes: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleSizeArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub test: TestChoice,
    #[arg(long, default_value_t = 0.9)]
    pub target: f64,
    #[arg(long, default_value_t = 10)]
    pub lower: usize,
    #[arg(long, default_value_t = 500)]
    pub upper: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated fit levels.
    #[arg(long, default_value = "0.5,0.75,0.9")]
    pub tau_fit: String,
    /// `start:stop:step` or a comma list of probabilities.
    #[arg(long, default_value = "0.01:0.99:0.01")]
    pub grid: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("--{name} must lie in (0,1), got {v}")))
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::InvalidInput(format!("bad {what} `{t}`"))))
        .collect()
}

/// Integer range `a:b:s` (inclusive) or a comma list.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step): (usize, usize, usize) = (
                a.trim().parse().map_err(|_| Error::InvalidInput(format!("bad size range `{s}`")))?,
                b.trim().parse().map_err(|_| Error::InvalidInput(format!("bad size range `{s}`")))?,
                step.trim().parse().map_err(|_| Error::InvalidInput(format!("bad size range `{s}`")))?,
            );
            if step == 0 || a == 0 || a > b {
                return Err(Error::InvalidInput(format!("bad size range `{s}`")));
            }
            Ok((a..=b).step_by(step).collect())
        }
        [_] => parse_list(s, "size"),
        _ => Err(Error::InvalidInput(format!("bad size range `{s}`"))),
    }
}

/// Probability grid `a:b:s` (inclusive, rounded to 12 decimals) or a comma list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let bad = || Error::InvalidInput(format!("bad grid `{s}`"));
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            let step: f64 = step.trim().parse().map_err(|_| bad())?;
            if !(step > 0.0) || a > b {
                return Err(bad());
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|k| ((a + k as f64 * step) * 1e12).round() / 1e12).collect())
        }
        [_] => parse_list(s, "grid point"),
        _ => Err(Error::InvalidInput(format!("bad grid `{s}`"))),
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut w = open_out(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ShortfallDocument<'a> {
    alpha: f64,
    reject: bool,
    #[serde(flatten)]
    report: &'a CovesReport,
}

#[derive(Serialize)]
struct TtestDocument<'a> {
    method: &'static str,
    alpha: f64,
    reject: bool,
    #[serde(flatten)]
    report: &'a OlsReport,
}

pub fn cmd_test(args: &TestArgs) -> Result<()> {
    check_unit("tau", args.tau)?;
    check_unit("alpha", args.alpha)?;
    let data = Dataset::read_csv(&args.input)?;
    let out = args.out.as_deref();
    match args.method {
        TestId::Coves | TestId::Es => {
            let report = if args.method == TestId::Coves {
                run_coves(&data, args.tau, args.side)?
            } else {
                run_es(&data, args.tau, args.side)?
            };
            let doc = ShortfallDocument { alpha: args.alpha, reject: report.p_value < args.alpha, report: &report };
            write_json(&doc, out)
        }
        TestId::Ttest => {
            let report = run_ttest(&data, args.side)?;
            let doc = TtestDocument { method: "ttest", alpha: args.alpha, reject: report.p_value < args.alpha, report: &report };
            write_json(&doc, out)
        }
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let data = match args.generator.build(0.0)? {
        Generator::Scenario(spec) => sample_scenario(&spec, args.m, args.n, args.seed)?,
        Generator::Targeted { f, g } => sample_targeted(&f, &g, args.m, args.n, args.seed)?,
    };
    let mut w = open_out(args.out.as_deref())?;
    data.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

pub fn cmd_power(args: &PowerArgs) -> Result<()> {
    let generator = args.generator.build(ETA_ALTERNATIVE)?;
    let test = args.test.spec()?;
    let sizes: Vec<(usize, usize)> = parse_sizes(&args.sizes)?
        .into_iter()
        .map(|n| args.test.allocation.sizes(n))
        .collect();
    let curve = power_curve(&generator, &test, &sizes, args.test.alpha, args.test.reps, args.test.seed)?;
    let mut w = open_out(args.out.as_deref())?;
    writeln!(w, "m,n,test,rate,mc_se")?;
    for e in curve {
        writeln!(w, "{},{},{},{:?},{:?}", e.m, e.n, e.test_id, e.rate, e.mc_se)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_samplesize(args: &SampleSizeArgs) -> Result<()> {
    let generator = args.generator.build(ETA_ALTERNATIVE)?;
    let test = args.test.spec()?;
    let result = sample_size_search(
        &generator,
        &test,
        args.target,
        args.test.allocation,
        args.test.alpha,
        args.test.reps,
        args.test.seed,
        (args.lower, args.upper),
    )?;
    write_json(&result, args.out.as_deref())
}

pub fn write_curves_csv<W: Write>(curves: &[QuantileCurves], mut w: W) -> Result<()> {
    writeln!(w, "tau_fit,gamma_hat,p,treatment,control")?;
    for c in curves {
        for (k, p) in c.grid.iter().enumerate() {
            writeln!(
                w,
                "{:?},{:?},{:?},{:?},{:?}",
                c.tau_fit, c.gamma_hat, p, c.curves.treatment[k], c.curves.control[k]
            )?;
        }
    }
    Ok(())
}

pub fn cmd_diagnose(args: &DiagnoseArgs) -> Result<()> {
    let data = Dataset::read_csv(&args.input)?;
    let taus: Vec<f64> = parse_list(&args.tau_fit, "fit level")?;
    for &t in &taus {
        check_unit("tau-fit", t)?;
    }
    let grid = parse_grid(&args.grid)?;
    let curves = taus
        .iter()
        .map(|&t| adjusted_quantile_curves(&data, t, &grid))
        .collect::<Result<Vec<_>>>()?;
    let mut w = open_out(args.out.as_deref())?;
    write_curves_csv(&curves, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_DEGENERATE
    }
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Test(a) => cmd_test(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Power(a) => cmd_power(a),
        Command::Samplesize(a) => cmd_samplesize(a),
        Command::Diagnose(a) => cmd_diagnose(a),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
