//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 pole or domain
//! error, 3 unreliable numerics (the report is still printed).

pub mod config;
pub mod eval;
pub mod finite_part;
pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use config::{ConfigFile, Settings};
use eval::{Argument, EvalMethod, EvalRequest, Function};
use finite_part::{FpMethod, Kind, SpecFlags};
use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_UNRELIABLE: i32 = 3;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Pole(_)
        | Error::Domain(_)
        | Error::InvalidGrid(_)
        | Error::UncontrolledRemainder => EXIT_DOMAIN,
        Error::Quadrature { .. }
        | Error::SeriesTail { .. }
        | Error::Underdetermined { .. }
        | Error::Singular => EXIT_UNRELIABLE,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "neutrix",
    version,
    about = "Neutrix-regularized gamma, digamma and polygamma values at the negative integers"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by all subcommands; each overrides the config file.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML settings file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// ε grid for integral fits, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps_grid: Option<Vec<f64>>,
    /// Relative tolerance of the double-double quadrature.
    #[arg(long, global = true)]
    pub quad_rel_tol: Option<f64>,
    /// Number of series terms for the mixed_half family.
    #[arg(long, global = true)]
    pub series_order: Option<usize>,
    /// Highest analytic power ε^d in shifted-argument fits.
    #[arg(long, global = true)]
    pub vanishing_order: Option<u32>,
    /// ε grid for shifted-argument fits, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub shifted_grid: Option<Vec<f64>>,
}

impl GlobalArgs {
    fn settings(&self) -> Result<Settings, String> {
        let file = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let flags = ConfigFile {
            eps_grid: self.eps_grid.clone(),
            quad_rel_tol: self.quad_rel_tol,
            series_order: self.series_order,
            vanishing_order: self.vanishing_order,
            shifted_grid: self.shifted_grid.clone(),
        };
        Settings::resolve(file.overlay(flags))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Γ, ψ or ψ⁽ⁿ⁾, regularized at the non-positive integers.
    Eval(EvalArgs),
    /// Finite part of a truncated integral.
    FinitePart(FinitePartArgs),
    /// Run the identity and cross-method checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub function: Function,
    /// Derivative order (polygamma only).
    #[arg(long)]
    pub n: Option<u32>,
    /// Argument. Integer text such as `-3` selects the regularized value.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "exact_neg_int",
        required_unless_present = "exact_neg_int"
    )]
    pub x: Option<String>,
    /// Evaluate at x = -M with the regularized value.
    #[arg(long, value_name = "M")]
    pub exact_neg_int: Option<u32>,
    #[arg(long, value_enum, default_value_t = EvalMethod::All)]
    pub method: EvalMethod,
}

#[derive(Debug, Args)]
pub struct FinitePartArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, value_enum, default_value_t = FpMethod::Symbolic)]
    pub method: FpMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
    /// Keep only checks whose id contains this text.
    #[arg(long)]
    pub filter: Option<String>,
}

/// Printed output and exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn fail(msg: impl std::fmt::Display, code: i32) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text, code)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let settings = match cli.global.settings() {
        Ok(s) => s,
        Err(msg) => return Outcome::fail(msg, EXIT_USAGE),
    };
    match cli.command {
        Command::Eval(a) => run_eval(a, &settings),
        Command::FinitePart(a) => run_finite_part(a, &settings),
        Command::Verify(a) => run_verify(a, &settings),
    }
}

fn run_eval(a: EvalArgs, s: &Settings) -> Outcome {
    let x = match (a.x, a.exact_neg_int) {
        (_, Some(m)) => Argument::NegInt(m),
        (Some(text), None) => match Argument::parse(&text) {
            Ok(x) => x,
            Err(msg) => return Outcome::fail(msg, EXIT_USAGE),
        },
        (None, None) => unreachable!("clap requires one of --x and --exact-neg-int"),
    };
    if a.n.is_some() && a.function != Function::Polygamma {
        return Outcome::fail("--n applies to polygamma only", EXIT_USAGE);
    }
    if a.n.is_none() && a.function == Function::Polygamma {
        return Outcome::fail("polygamma needs --n", EXIT_USAGE);
    }
    let req = EvalRequest {
        function: a.function,
        n: a.n,
        x,
        method: a.method,
    };
    match eval::evaluate(&req, s) {
        Ok(out) => {
            let code = if out.unreliable {
                EXIT_UNRELIABLE
            } else {
                EXIT_OK
            };
            Outcome::ok(render::to_json(&out), code)
        }
        Err(e) => Outcome::fail(&e, exit_code(&e)),
    }
}

fn run_finite_part(a: FinitePartArgs, s: &Settings) -> Outcome {
    let flags = SpecFlags {
        x: a.x,
        n: a.n,
        r: a.r,
        m: a.m,
    };
    let spec = match finite_part::build_spec(a.kind, flags) {
        Ok(spec) => spec,
        Err(msg) => return Outcome::fail(msg, EXIT_USAGE),
    };
    let result = match a.method {
        FpMethod::Symbolic => finite_part::symbolic(&spec, s).map(|o| (render::to_json(&o), false)),
        FpMethod::Fit => finite_part::fit(&spec, s).map(|r| (render::to_json(&r), r.unreliable)),
    };
    match result {
        Ok((text, false)) => Outcome::ok(text, EXIT_OK),
        Ok((text, true)) => Outcome {
            stdout: text,
            stderr: "warning: fit is UNRELIABLE (condition estimate above limit)\n".into(),
            code: EXIT_UNRELIABLE,
        },
        Err(e) => Outcome::fail(&e, exit_code(&e)),
    }
}

fn run_verify(a: VerifyArgs, s: &Settings) -> Outcome {
    let rows = verify::run(a.suite, a.filter.as_deref(), s);
    let text = match a.out {
        OutFormat::Json => render::to_json(&rows),
        OutFormat::Csv => render::to_csv(&rows, &verify::HEADER),
    };
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        Outcome::ok(text, EXIT_OK)
    } else {
        Outcome {
            stdout: text,
            stderr: format!("{failed} of {} checks failed\n", rows.len()),
            code: EXIT_UNRELIABLE,
        }
    }
}

/// Entry point for the binary: runs and writes both streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run(args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}
