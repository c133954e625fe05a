//! Command-line front end: `check`, `sweep`, `clone` and `sample`.
//!
//! Exit codes: 0 on success, 1 when an invariant fails, 2 for usage or
//! configuration errors (including non-optimal sharpness pairs).

mod check;
mod output;

pub use check::{grid_geometries, random_geometry, run_checks, CheckOptions, CheckReport, SuiteResult};
pub use output::{format_f64, write_csv, write_json, Num, SWEEP_COLUMNS};

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cloner::{CloneError, Cloner};
use crate::fidelity::{fidelity_report, FidelityReport, SphereQuadrature};
use crate::linalg::{density_from_bloch, LinalgError, QubitState, UnitVector3};
use crate::measurement::{
    beta_max, chi_square, joint_distribution, sample_outcomes, GeometryError, MeasurementGeometry, Outcome,
    DEFAULT_SEED,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Clone(#[from] CloneError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Clone(_) => 1,
            _ => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// How `beta` is chosen at each grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BetaPolicy {
    /// The largest `beta` allowed by the optimality inequality.
    Max,
    Fixed(f64),
}

impl FromStr for BetaPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("max") {
            return Ok(BetaPolicy::Max);
        }
        match s.parse::<f64>() {
            Ok(v) if (0.0..=1.0).contains(&v) => Ok(BetaPolicy::Fixed(v)),
            Ok(v) => Err(format!("beta {v} is outside [0, 1]")),
            Err(_) => Err(format!("expected `max` or a number, got `{s}`")),
        }
    }
}

impl BetaPolicy {
    pub fn resolve(self, alpha: f64, eta: f64) -> f64 {
        match self {
            BetaPolicy::Max => beta_max(alpha, eta),
            BetaPolicy::Fixed(v) => v,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub alpha_steps: usize,
    pub eta_steps: usize,
    /// Radians, within `[0, pi]`.
    pub eta_range: (f64, f64),
    pub beta: BetaPolicy,
    pub quad_res: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            alpha_steps: 41,
            eta_steps: 41,
            eta_range: (0.0, PI),
            beta: BetaPolicy::Max,
            quad_res: 64,
            seed: DEFAULT_SEED,
            format: Format::Csv,
        }
    }
}

/// Angles this close outside `[0, pi]` are clamped (degree conversion of 180
/// lands a hair above pi).
const ANGLE_SLACK: f64 = 1e-12;

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.alpha_steps < 2 || self.eta_steps < 2 {
            return Err(usage("--alpha-steps and --eta-steps must be at least 2"));
        }
        let (lo, hi) = self.eta_range;
        if !(lo >= -ANGLE_SLACK && hi <= PI + ANGLE_SLACK && lo <= hi) {
            return Err(usage(format!("eta range [{lo}, {hi}] must satisfy 0 <= eta-min <= eta-max <= pi")));
        }
        if self.quad_res == 0 {
            return Err(usage("--quad-res must be positive"));
        }
        Ok(())
    }

    /// Grid points `(alpha, eta)` in alpha-major order.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        let (lo, hi) = (self.eta_range.0.clamp(0.0, PI), self.eta_range.1.clamp(0.0, PI));
        let mut out = Vec::with_capacity(self.alpha_steps * self.eta_steps);
        for i in 0..self.alpha_steps {
            let alpha = i as f64 / (self.alpha_steps - 1) as f64;
            for j in 0..self.eta_steps {
                let t = j as f64 / (self.eta_steps - 1) as f64;
                let eta = if j + 1 == self.eta_steps { hi } else { lo + (hi - lo) * t };
                out.push((alpha, eta));
            }
        }
        out
    }
}

/// Result of a sweep: rows in grid order plus the grid points skipped
/// because a fixed `beta` does not saturate the optimality inequality there.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub rows: Vec<FidelityReport>,
    pub skipped: usize,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Sweep, CliError> {
    cfg.validate()?;
    let rule = SphereQuadrature::with_resolution(cfg.quad_res);
    let results: Vec<Option<Result<FidelityReport, CloneError>>> = cfg
        .grid()
        .into_par_iter()
        .map(|(alpha, eta)| {
            let g = MeasurementGeometry::canonical(alpha, cfg.beta.resolve(alpha, eta), eta).ok()?;
            Some(fidelity_report(&g, &rule))
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut skipped = 0;
    for r in results {
        match r {
            Some(report) => rows.push(report?),
            None => skipped += 1,
        }
    }
    if rows.is_empty() {
        return Err(usage("no grid point saturates the optimality inequality for this beta"));
    }
    Ok(Sweep { rows, skipped })
}

pub fn write_sweep<W: Write>(rows: &[FidelityReport], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(rows, out)?,
        Format::Json => write_json(rows, out)?,
    }
    Ok(())
}

/// Input state given by Bloch angles relative to `a` (polar) and the
/// `a`-`b` plane (azimuth), and a Bloch radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateSpec {
    pub theta: f64,
    pub phi: f64,
    pub radius: f64,
}

impl StateSpec {
    fn validate(&self) -> Result<(), CliError> {
        if !(0.0..=1.0).contains(&self.radius) {
            return Err(usage(format!("--radius {} is outside [0, 1]", self.radius)));
        }
        Ok(())
    }

    fn bloch(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [self.radius * st * cp, self.radius * st * sp, self.radius * ct]
    }
}

#[derive(Debug, Serialize)]
pub struct GeometryEcho {
    alpha: Num,
    beta: Num,
    eta: Num,
    p: Num,
    epsilon: Num,
    a: [Num; 3],
    b: [Num; 3],
    m: [Num; 3],
    l: [Num; 3],
}

fn vec_nums(v: &UnitVector3) -> [Num; 3] {
    [Num(v.x()), Num(v.y()), Num(v.z())]
}

impl From<&MeasurementGeometry> for GeometryEcho {
    fn from(g: &MeasurementGeometry) -> Self {
        Self {
            alpha: Num(g.alpha()),
            beta: Num(g.beta()),
            eta: Num(g.eta()),
            p: Num(g.p()),
            epsilon: Num(g.epsilon()),
            a: vec_nums(&g.a()),
            b: vec_nums(&g.b()),
            m: vec_nums(&g.m()),
            l: vec_nums(&g.l()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Amplitude {
    re: Num,
    im: Num,
}

#[derive(Debug, Serialize)]
pub struct CloneResiduals {
    a_component: Num,
    b_component: Num,
    normal_a: Num,
    normal_b: Num,
    weights_vs_born: Num,
}

#[derive(Debug, Serialize)]
pub struct CloneRecord {
    geometry: GeometryEcho,
    input_bloch: [Num; 3],
    outcomes: [Outcome; 4],
    /// `null` for mixed inputs.
    lambdas: Option<Vec<Amplitude>>,
    weights: [Num; 4],
    born: [Num; 4],
    bloch_a: [Num; 3],
    bloch_b: [Num; 3],
    residuals: CloneResiduals,
}

pub fn clone_record(g: &MeasurementGeometry, state: &StateSpec) -> Result<CloneRecord, CliError> {
    state.validate()?;
    let cloner = Cloner::new(g)?;
    let bloch = g.frame().to_world(&state.bloch().into());
    let rho = density_from_bloch(&bloch)?;
    let out = if state.radius == 1.0 {
        cloner.clone_pure(&QubitState::from_bloch_angles(bloch.z.clamp(-1.0, 1.0).acos(), bloch.y.atan2(bloch.x)))
    } else {
        cloner.clone_mixed(&rho)?
    };
    let born = joint_distribution(&rho, cloner.povm());
    let res = out.bloch_residuals(g);
    Ok(CloneRecord {
        geometry: g.into(),
        input_bloch: output::nums(out.input_bloch.into()),
        outcomes: Outcome::ALL,
        lambdas: out.lambdas.map(|ls| ls.iter().map(|l| Amplitude { re: Num(l.re), im: Num(l.im) }).collect()),
        weights: output::nums(out.weights),
        born: output::nums(born.probs()),
        bloch_a: output::nums(out.bloch_a.into()),
        bloch_b: output::nums(out.bloch_b.into()),
        residuals: CloneResiduals {
            a_component: Num(res.a_component),
            b_component: Num(res.b_component),
            normal_a: Num(res.normal_a),
            normal_b: Num(res.normal_b),
            weights_vs_born: Num(out.distribution().max_difference(&born)),
        },
    })
}

#[derive(Debug, Serialize)]
pub struct ChiSquareRecord {
    statistic: Num,
    degrees_of_freedom: u32,
    p_value: Num,
}

#[derive(Debug, Serialize)]
pub struct SampleRecord {
    geometry: GeometryEcho,
    input_bloch: [Num; 3],
    seed: u64,
    n: u64,
    outcomes: [Outcome; 4],
    counts: [u64; 4],
    frequencies: [Num; 4],
    expected: [Num; 4],
    chi_square: ChiSquareRecord,
    /// The single result when `n = 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    outcome: Option<Outcome>,
}

pub fn sample_record(g: &MeasurementGeometry, state: &StateSpec, n: u64, seed: u64) -> Result<SampleRecord, CliError> {
    state.validate()?;
    if n == 0 {
        return Err(usage("-n must be positive"));
    }
    let bloch = g.frame().to_world(&state.bloch().into());
    let rho = density_from_bloch(&bloch)?;
    let counts = sample_outcomes(&rho, g, n, seed);
    let dist = joint_distribution(&rho, &crate::measurement::build_povm(g));
    let test = chi_square(&counts, &dist);
    let outcome = (n == 1).then(|| Outcome::ALL.into_iter().find(|&o| counts.get(o) == 1)).flatten();
    Ok(SampleRecord {
        geometry: g.into(),
        input_bloch: output::nums(bloch.into()),
        seed,
        n,
        outcomes: Outcome::ALL,
        counts: counts.counts(),
        frequencies: output::nums(counts.frequencies()),
        expected: output::nums(dist.probs()),
        chi_square: ChiSquareRecord {
            statistic: Num(test.statistic),
            degrees_of_freedom: test.degrees_of_freedom,
            p_value: Num(test.p_value),
        },
        outcome,
    })
}

#[derive(Debug, Parser)]
#[command(name = "spinclone", version, about = "Joint spin measurements and the cloners built from them")]
pub struct Cli {
    /// Read every angle argument in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every invariant suite and report residuals.
    Check(CheckArgs),
    /// Average fidelities over an (alpha, eta) grid.
    Sweep(SweepArgs),
    /// Clone one input state and print amplitudes, Bloch vectors and residuals.
    Clone(CloneArgs),
    /// Simulate the joint measurement on one input state.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 41)]
    alpha_steps: usize,
    #[arg(long, default_value_t = 41)]
    eta_steps: usize,
    /// Random (geometry, state) pairs for the randomized suites.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 64)]
    quad_res: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_sign_error: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 41)]
    alpha_steps: usize,
    #[arg(long, default_value_t = 41)]
    eta_steps: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    eta_min: f64,
    /// Defaults to pi (180 with --degrees).
    #[arg(long, allow_hyphen_values = true)]
    eta_max: Option<f64>,
    /// `max` or a fixed value in [0, 1].
    #[arg(long, default_value = "max")]
    beta: BetaPolicy,
    /// Legendre nodes in cos(theta); twice as many are used in phi.
    #[arg(long, default_value_t = 64)]
    quad_res: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    #[arg(long)]
    alpha: f64,
    /// `max` or a value in [0, 1].
    #[arg(long, default_value = "max")]
    beta: BetaPolicy,
    /// Angle between a and b.
    #[arg(long, allow_hyphen_values = true)]
    eta: f64,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Polar angle of the input Bloch vector, measured from a.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta: f64,
    /// Azimuth of the input Bloch vector, measured from the a-b plane.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,
    /// Bloch radius; below 1 gives a mixed input.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Debug, Args)]
struct CloneArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    #[command(flatten)]
    state: StateArgs,
    /// Number of shots.
    #[arg(short = 'n', long = "shots", default_value_t = 1000)]
    n: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open_out(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_record<T: Serialize>(record: &T, path: Option<&PathBuf>) -> Result<(), CliError> {
    let mut out = open_out(path)?;
    serde_json::to_writer_pretty(&mut out, record)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

impl Cli {
    fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }

    fn geometry(&self, args: &GeometryArgs) -> Result<MeasurementGeometry, CliError> {
        let eta = self.angle(args.eta);
        if !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&eta) {
            return Err(usage(format!("eta = {eta} rad is outside [0, pi]")));
        }
        let eta = eta.clamp(0.0, PI);
        Ok(MeasurementGeometry::canonical(args.alpha, args.beta.resolve(args.alpha, eta), eta)?)
    }

    fn state(&self, args: &StateArgs) -> StateSpec {
        StateSpec { theta: self.angle(args.theta), phi: self.angle(args.phi), radius: args.radius }
    }

    /// Runs the parsed command and returns the process exit code.
    pub fn run(&self) -> Result<u8, CliError> {
        match &self.command {
            Command::Check(args) => {
                let report = run_checks(&CheckOptions {
                    alpha_steps: args.alpha_steps,
                    eta_steps: args.eta_steps,
                    samples: args.samples,
                    seed: args.seed,
                    quad_res: args.quad_res,
                    inject_sign_error: args.inject_sign_error,
                });
                let mut out = open_out(args.out.as_ref())?;
                writeln!(out, "{report}")?;
                out.flush()?;
                Ok(if report.passed() { 0 } else { 1 })
            }
            Command::Sweep(args) => {
                let cfg = SweepConfig {
                    alpha_steps: args.alpha_steps,
                    eta_steps: args.eta_steps,
                    eta_range: (self.angle(args.eta_min), args.eta_max.map_or(PI, |x| self.angle(x))),
                    beta: args.beta,
                    quad_res: args.quad_res,
                    seed: args.seed,
                    format: args.format,
                };
                let sweep = run_sweep(&cfg)?;
                if sweep.skipped > 0 {
                    eprintln!("skipped {} grid points where beta does not saturate the optimality bound", sweep.skipped);
                }
                let mut out = open_out(args.out.as_ref())?;
                write_sweep(&sweep.rows, cfg.format, &mut out)?;
                out.flush()?;
                Ok(0)
            }
            Command::Clone(args) => {
                let g = self.geometry(&args.geometry)?;
                let record = clone_record(&g, &self.state(&args.state))?;
                write_record(&record, args.out.as_ref())?;
                Ok(0)
            }
            Command::Sample(args) => {
                let g = self.geometry(&args.geometry)?;
                let record = sample_record(&g, &self.state(&args.state), args.n, args.seed)?;
                write_record(&record, args.out.as_ref())?;
                Ok(0)
            }
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
