//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 domain error, 4 tolerance
//! or numerical failure.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::equations::{self, equation_by_name, QuasilinearEquation, EQUATION_NAMES};
use crate::error::Error;
use crate::flux::{self, FluxPair};
use crate::solution::{self, construct, EntireSolution};
use crate::verify::{
    blowup_probe, holder_exponent, verify_solution, Axis, Exclusion, Grid, Ray, VerificationReport,
    DEFAULT_ANALYTIC_TOL, DEFAULT_AXIS_MARGIN, DEFAULT_FD_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "entire", about = "Separable entire solutions and residual checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List flux pairs and equations.
    List,
    /// Sample a constructed solution on a grid as CSV.
    Sample(RunArgs),
    /// Verify a constructed solution against an equation; prints a JSON report.
    Verify(RunArgs),
    /// Run one of the counterexample demonstrations (`arctan` or `aronsson`).
    Counterexample {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, clap::Args)]
struct RunArgs {
    /// Flux pair for both variables.
    #[arg(long)]
    flux: Option<String>,
    #[arg(long)]
    flux1: Option<String>,
    #[arg(long)]
    flux2: Option<String>,
    #[arg(long, default_value = "wrong_msa")]
    equation: String,
    /// Separation constant.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c: f64,
    /// `xmin,xmax,ymin,ymax,nx,ny`
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    #[arg(long)]
    tol: Option<f64>,
    /// Use finite-difference bundles instead of analytic ones.
    #[arg(long)]
    fd: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Drop nodes within this distance of either axis.
    #[arg(long)]
    exclude_axes: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b, c, d, nx, ny] = parts.as_slice() else {
            return Err(format!("expected xmin,xmax,ymin,ymax,nx,ny, got `{s}`"));
        };
        let real = |v: &str| v.parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        let count = |v: &str| v.parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
        Ok(Self {
            x_min: real(a)?,
            x_max: real(b)?,
            y_min: real(c)?,
            y_max: real(d)?,
            nx: count(nx)?,
            ny: count(ny)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcmd {
    Sample,
    Verify,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: Subcmd,
    pub flux1: FluxPair,
    pub flux2: FluxPair,
    pub equation: QuasilinearEquation,
    pub c: f64,
    pub grid: Grid,
    pub tol: f64,
    pub use_fd: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn from_args(subcommand: Subcmd, args: RunArgs) -> Result<Self, Error> {
        let lookup = |name: &str| flux::by_name(name).ok_or_else(|| Error::UnknownFlux(name.to_owned()));
        let name1 = args.flux1.as_deref().or(args.flux.as_deref()).unwrap_or("cubic");
        let name2 = args.flux2.as_deref().or(args.flux.as_deref()).unwrap_or("cubic");
        let (flux1, flux2) = (lookup(name1)?, lookup(name2)?);
        let equation = equation_by_name(&args.equation, &flux1, &flux2, args.seed)?;
        if !args.c.is_finite() {
            return Err(Error::InvalidConfig(format!("separation constant {}", args.c)));
        }
        let spec = args.grid.unwrap_or(match subcommand {
            Subcmd::Sample => GridSpec { x_min: -2.0, x_max: 2.0, y_min: -2.0, y_max: 2.0, nx: 41, ny: 41 },
            Subcmd::Verify => GridSpec { x_min: -10.0, x_max: 10.0, y_min: -10.0, y_max: 10.0, nx: 201, ny: 201 },
        });
        let mut grid = Grid::new(spec.x_min, spec.x_max, spec.y_min, spec.y_max, spec.nx, spec.ny)?;
        if let Some(margin) = args.exclude_axes {
            if !(margin >= 0.0) {
                return Err(Error::InvalidConfig(format!("axis margin {margin}")));
            }
            grid = grid.excluding(Exclusion::AxisMargin(margin));
        }
        let tol = args.tol.unwrap_or(if args.fd { DEFAULT_FD_TOL } else { DEFAULT_ANALYTIC_TOL });
        if !(tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tolerance {tol}")));
        }
        Ok(Self {
            subcommand,
            flux1,
            flux2,
            equation,
            c: args.c,
            grid,
            tol,
            use_fd: args.fd,
            seed: args.seed,
            out: args.out,
        })
    }

    pub fn solution(&self) -> EntireSolution {
        construct(self.flux1.clone(), self.flux2.clone(), self.c)
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnknownFlux(_) | Error::UnknownEquation(_) | Error::InvalidConfig(_) => EXIT_CONFIG,
        Error::OutOfRange { .. }
        | Error::OutOfDomain { .. }
        | Error::SingularPoint { .. }
        | Error::StencilOutOfDomain { .. }
        | Error::EmptyGrid => EXIT_DOMAIN,
        Error::NoConvergence { .. } | Error::ToleranceNotMet { .. } | Error::DegenerateFit { .. } => {
            EXIT_TOLERANCE
        }
    }
}

fn error_json(err: &Error) -> String {
    let code = exit_code(err);
    json!({ "error": err.to_string(), "exit_code": code }).to_string() + "\n"
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { Outcome::ok(text) } else { Outcome::fail(code, text) };
        }
    };
    let (outcome, out) = match cli.command {
        Command::List => (Outcome::ok(cmd_list()), None),
        Command::Sample(args) => {
            let out = args.out.clone();
            (with_config(Subcmd::Sample, args, cmd_sample), out)
        }
        Command::Verify(args) => {
            let out = args.out.clone();
            (with_config(Subcmd::Verify, args, cmd_verify), out)
        }
        Command::Counterexample { name, out } => (cmd_counterexample(&name), out),
    };
    match out {
        Some(path) if !outcome.stdout.is_empty() => match std::fs::write(&path, &outcome.stdout) {
            Ok(()) => Outcome { stdout: String::new(), ..outcome },
            Err(e) => Outcome::fail(EXIT_CONFIG, format!("cannot write {}: {e}\n", path.display())),
        },
        _ => outcome,
    }
}

fn with_config(sub: Subcmd, args: RunArgs, f: fn(&RunConfig) -> Outcome) -> Outcome {
    match RunConfig::from_args(sub, args) {
        Ok(cfg) => f(&cfg),
        Err(e) => Outcome::fail(exit_code(&e), error_json(&e)),
    }
}

pub fn cmd_list() -> String {
    let mut s = String::from("flux pairs:\n");
    for p in flux::builtin_catalog() {
        let mut notes = Vec::new();
        if !p.is_bijective() {
            notes.push("range-restricted");
        }
        if p.positivity() == flux::Positivity::NonnegativeVanishing {
            notes.push("f-vanishing");
        }
        let notes = if notes.is_empty() { String::new() } else { format!("  [{}]", notes.join(", ")) };
        let _ = writeln!(s, "  {:<9} range {}  positivity {:?}{}", p.name(), p.range(), p.positivity(), notes);
    }
    s.push_str("equations:\n");
    for name in EQUATION_NAMES {
        let _ = writeln!(s, "  {name}");
    }
    s
}

/// CSV float: 17 significant digits, round-trips exactly. Negative zero is
/// written as zero.
pub fn format_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

pub const CSV_HEADER: &str = "x,y,u,ux,uy,uxx,uxy,uyy";

pub fn cmd_sample(cfg: &RunConfig) -> Outcome {
    let sol = cfg.solution();
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for (x, y) in cfg.grid.active_nodes() {
        let b = match sol.eval(x, y) {
            Ok(b) => b,
            Err(e) => return Outcome::fail(exit_code(&e), error_json(&e)),
        };
        let row: Vec<String> = [b.x, b.y, b.u, b.ux, b.uy, b.uxx, b.uxy, b.uyy]
            .into_iter()
            .map(format_float)
            .collect();
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    Outcome::ok(csv)
}

#[derive(Debug, Serialize)]
struct VerifyOutput<'a> {
    #[serde(flatten)]
    report: &'a VerificationReport,
    tolerance: f64,
    c: f64,
    affine: bool,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostic: Option<String>,
}

pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let sol = cfg.solution();
    let report = match verify_solution(&sol, &cfg.equation, &cfg.grid, cfg.use_fd) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit_code(&e), error_json(&e)),
    };
    let affine = sol.is_affine(&cfg.grid.active_nodes());
    let within = report.passes(cfg.tol);
    let nonlinear_ok = cfg.c == 0.0 || !affine;
    let diagnostic = match (within, nonlinear_ok) {
        (true, true) => None,
        (false, _) => Some(format!(
            "max residual {:e} exceeds tolerance {:e}",
            report.max_abs_residual, cfg.tol
        )),
        (true, false) => Some("solution is affine although c != 0".to_owned()),
    };
    let passed = diagnostic.is_none();
    let output = VerifyOutput { report: &report, tolerance: cfg.tol, c: cfg.c, affine, passed, diagnostic };
    let text = serde_json::to_string_pretty(&output).expect("report serializes") + "\n";
    if passed {
        Outcome::ok(text)
    } else {
        Outcome { code: EXIT_TOLERANCE, stdout: text, stderr: String::new() }
    }
}

/// Distances from the origin at which the arctan solution is probed along
/// the x axis.
#[allow(clippy::approx_constant)]
pub const ARCTAN_PROBES: [f64; 6] = [0.0, 0.5, 1.0, 1.5, 1.57, 1.5707];

pub fn cmd_counterexample(name: &str) -> Outcome {
    let result = match name {
        "arctan" => arctan_demo(),
        "aronsson" => aronsson_demo(),
        other => {
            return Outcome::fail(
                EXIT_CONFIG,
                json!({ "error": format!("unknown counterexample `{other}`"), "exit_code": EXIT_CONFIG })
                    .to_string()
                    + "\n",
            )
        }
    };
    match result {
        Ok(v) => Outcome::ok(serde_json::to_string_pretty(&v).expect("json") + "\n"),
        Err(e) => Outcome::fail(exit_code(&e), error_json(&e)),
    }
}

fn arctan_demo() -> Result<serde_json::Value, Error> {
    let sol = solution::arctan_solution();
    let pair = flux::arctan();
    let grid = Grid::square(-1.5, 1.5, 101)?;
    let msa = verify_solution(&sol, &equations::minimal_surface(), &grid, false)?;
    let dual = equations::corollary_form(
        &pair,
        &pair,
        equations::random_b_provider(0, equations::corollary_bound(&pair, &pair)),
    );
    let dual = verify_solution(&sol, &dual, &grid, false)?;
    let blowup = blowup_probe(&sol, &Ray::x_axis(), &ARCTAN_PROBES)?;
    Ok(json!({
        "name": "arctan",
        "solution": sol.descriptor(),
        "domain": sol.domain(),
        "bijective": pair.is_bijective(),
        "interior_max_residual": msa.max_abs_residual,
        "corollary_max_residual": dual.max_abs_residual,
        "blowup": blowup,
    }))
}

fn aronsson_demo() -> Result<serde_json::Value, Error> {
    let sol = solution::aronsson_solution();
    let grid = Grid::square(-2.0, 2.0, 101)?.excluding(Exclusion::AxisMargin(DEFAULT_AXIS_MARGIN));
    let report = verify_solution(&sol, &equations::aronsson(), &grid, false)?;
    let radii: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    let alpha = holder_exponent(&sol, Axis::X, &radii)?;
    let eq = equations::aronsson();
    let degenerate = grid
        .active_nodes()
        .into_iter()
        .filter_map(|(x, y)| sol.eval(x, y).ok())
        .all(|b| eq.classify(&b) == equations::Ellipticity::Degenerate);
    Ok(json!({
        "name": "aronsson",
        "solution": sol.descriptor(),
        "off_axis_max_residual": report.max_abs_residual,
        "axis_margin": DEFAULT_AXIS_MARGIN,
        "holder_exponent": alpha,
        "min_ellipticity_margin": report.min_ellipticity_margin,
        "degenerate_ellipticity": degenerate,
    }))
}
