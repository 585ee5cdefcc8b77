//! Command-line front end.
//!
//! [`parse_args`] turns an argument vector into a validated [`RunConfig`];
//! [`execute`] runs it on a dedicated thread pool and returns the output
//! bytes, which depend only on the configuration and seed.

mod config;
mod emit;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::equidist::{AngleInterval, Engine, EngineOptions, WindowConfig};
use crate::error::Error;
use crate::fields::ImagQuadField;
use crate::selberg::Sign;
use crate::traces::CMCurve;

pub use config::{parse_sweep_config, SweepFile};
pub use emit::{emit_plot_script, emit_report, plot_script_from_csv, ReportFormat};
pub use run::{execute, main_with_args, Outcome};

/// Exit code for a completed run.
pub const EXIT_OK: i32 = 0;
/// Exit code for runtime failures.
pub const EXIT_RUNTIME: i32 = 1;
/// Exit code for usage errors and violated preconditions.
pub const EXIT_CONSTRAINT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "frobangle",
    version,
    about = "Frobenius angles of CM elliptic curves over short intervals"
)]
struct Cli {
    /// Worker threads; falls back to FROBANGLE_THREADS, then all cores.
    #[arg(long, global = true, env = "FROBANGLE_THREADS")]
    threads: Option<usize>,

    /// Run seed for every sampled choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file (`-` for stdout), or an output format: csv, count, json.
    #[arg(long, global = true)]
    out: Option<String>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Primes in (lo, hi].
    Primes {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Frobenius traces and angles for the good primes in [pmin, pmax].
    Trace {
        #[arg(long, value_parser = parse_curve)]
        curve: CMCurve,
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
    },
    /// Beurling–Selberg majorant or minorant of an interval.
    Selberg {
        #[arg(long, value_parser = parse_interval)]
        interval: AngleInterval,
        #[arg(long = "M")]
        degree: usize,
        #[arg(long, value_parser = parse_sign)]
        sign: Sign,
        /// `coeffs`, or `grid:<k>` for values on k equally spaced angles.
        #[arg(long, default_value = "coeffs", value_parser = parse_emit)]
        emit: SelbergEmit,
    },
    /// Weighted angle sum of one window, with its sandwich and power sums.
    Verify {
        #[command(flatten)]
        window: WindowArgs,
        /// Constant of the envelope E(x; c) added to the report.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Run even when a hypothesis fails; the report is flagged.
        #[arg(long)]
        unsafe_params: bool,
    },
    /// Verify every [window] block of a config file; CSV output.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the file's `curve` key.
        #[arg(long, value_parser = parse_curve)]
        curve: Option<CMCurve>,
        #[arg(long)]
        unsafe_params: bool,
    },
    /// Character sum of the field, and optionally power sums of a curve.
    Charsum {
        #[arg(long, value_parser = parse_field, conflicts_with = "curve", required_unless_present = "curve")]
        field: Option<ImagQuadField>,
        #[arg(long, value_parser = parse_curve)]
        curve: Option<CMCurve>,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        h: u64,
        /// Largest m of the power sums (needs --curve).
        #[arg(long = "max-m", requires = "curve")]
        max_m: Option<usize>,
        #[arg(long)]
        unsafe_params: bool,
    },
    /// The measure mu(I) = |I|/2pi + 1/2 [pi/2 in I].
    Mu {
        #[arg(long, value_parser = parse_interval)]
        interval: AngleInterval,
    },
    /// Gnuplot script for a sweep CSV: |rel_error| and E(x; c) against x.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
}

#[derive(Debug, Args)]
struct WindowArgs {
    #[arg(long, value_parser = parse_curve)]
    curve: CMCurve,
    #[arg(long)]
    x: u64,
    #[arg(long)]
    h: u64,
    #[arg(long, value_parser = parse_interval)]
    interval: AngleInterval,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long = "M")]
    degree: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelbergEmit {
    Coeffs,
    Grid(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimesOutput {
    Csv,
    Count,
}

/// A validated command with its parameters.
#[derive(Debug, Clone)]
pub enum Command {
    Primes {
        lo: u64,
        hi: u64,
        output: PrimesOutput,
    },
    Trace {
        curve: CMCurve,
        pmin: u64,
        pmax: u64,
    },
    Selberg {
        interval: AngleInterval,
        degree: usize,
        sign: Sign,
        emit: SelbergEmit,
    },
    Verify {
        curve: CMCurve,
        config: WindowConfig,
        interval: AngleInterval,
        c: Option<f64>,
        format: ReportFormat,
        unsafe_params: bool,
    },
    Sweep {
        curve: CMCurve,
        file: SweepFile,
        unsafe_params: bool,
    },
    Charsum {
        field: ImagQuadField,
        curve: Option<CMCurve>,
        x: u64,
        h: u64,
        max_m: Option<usize>,
        unsafe_params: bool,
    },
    Mu {
        interval: AngleInterval,
    },
    Plot {
        csv: PathBuf,
        c: f64,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    /// `None` uses every core.
    pub threads: Option<usize>,
    /// `None` is stdout.
    pub out_path: Option<PathBuf>,
}

/// A usage or validation failure, with the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_CONSTRAINT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

/// The exit code for a library error: violated preconditions give
/// [`EXIT_CONSTRAINT`], failures during computation [`EXIT_RUNTIME`].
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Ambiguous(_)
        | Error::Inconsistent(_)
        | Error::OverCeiling { .. }
        | Error::NotOnCurve(_)
        | Error::Representation(_) => EXIT_RUNTIME,
        _ => EXIT_CONSTRAINT,
    }
}

fn parse_curve(s: &str) -> std::result::Result<CMCurve, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> std::result::Result<ImagQuadField, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_interval(s: &str) -> std::result::Result<AngleInterval, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sign(s: &str) -> std::result::Result<Sign, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_emit(s: &str) -> std::result::Result<SelbergEmit, String> {
    if s == "coeffs" {
        return Ok(SelbergEmit::Coeffs);
    }
    let k = s
        .strip_prefix("grid:")
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k >= 2)
        .ok_or_else(|| format!("expected `coeffs` or `grid:<k>` with k >= 2, got `{s}`"))?;
    Ok(SelbergEmit::Grid(k))
}

/// The flags behind each inequality of a constraint violation.
fn flags_for(violation: &str) -> &'static str {
    const TABLE: &[(&str, &str)] = &[
        ("x >= 3", "--x"),
        ("x > 100 N", "--x, --curve"),
        ("delta + theta", "--delta, --theta"),
        ("delta > 0", "--delta"),
        ("theta > 0", "--theta"),
        ("x^(1-delta) <= h", "--h, --delta"),
        ("h <= x", "--h"),
        ("sqrt(x) log x <= h", "--h"),
        ("1 <= M", "--M"),
        ("|I| >= x^(-theta)", "--interval, --theta"),
    ];
    TABLE
        .iter()
        .find(|(prefix, _)| violation.starts_with(prefix))
        .map_or("", |(_, f)| f)
}

fn constraint_message(v: &[String]) -> String {
    let parts: Vec<String> = v.iter().map(|s| format!("{} [{}]", s, flags_for(s))).collect();
    format!("constraint violated: {}", parts.join("; "))
}

fn require(cond: bool, flag: &str, what: &str) -> std::result::Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::usage(format!("{flag}: {what}")))
    }
}

/// Parses and validates an argument vector (without the program name).
///
/// `--help` and `--version` come back as a [`CliError`] with exit code 0
/// carrying the text to print.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("frobangle")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| CliError {
        message: e.render().to_string(),
        code: if e.use_stderr() { EXIT_CONSTRAINT } else { EXIT_OK },
    })?;
    if let Some(t) = cli.threads {
        require(t >= 1, "--threads", "must be at least 1")?;
    }
    let (format_hint, out_path) = match cli.out.as_deref() {
        None | Some("-") => (None, None),
        Some(f @ ("csv" | "count" | "json")) => (Some(f.to_string()), None),
        Some(path) => (None, Some(PathBuf::from(path))),
    };
    let command = match cli.command {
        Cmd::Primes { lo, hi } => {
            require(lo < hi, "--lo/--hi", "require lo < hi")?;
            require(hi <= crate::primes::DEFAULT_MAX_HI, "--hi", "must not exceed 2^46")?;
            let output = match format_hint.as_deref() {
                None | Some("csv") => PrimesOutput::Csv,
                Some("count") => PrimesOutput::Count,
                Some(f) => return Err(CliError::usage(format!("--out: primes cannot emit {f}"))),
            };
            Command::Primes { lo, hi, output }
        }
        Cmd::Trace { curve, pmin, pmax } => {
            require(pmin <= pmax, "--pmin/--pmax", "require pmin <= pmax")?;
            require(pmax < crate::traces::MAX_PRIME, "--pmax", "must be below 2^62")?;
            check_format(format_hint.as_deref(), &["csv"])?;
            Command::Trace { curve, pmin, pmax }
        }
        Cmd::Selberg {
            interval,
            degree,
            sign,
            emit,
        } => {
            require(
                (1..=crate::selberg::MAX_DEGREE).contains(&degree),
                "--M",
                "degree must lie in [1, 10^6]",
            )?;
            check_format(format_hint.as_deref(), &["csv"])?;
            Command::Selberg {
                interval,
                degree,
                sign,
                emit,
            }
        }
        Cmd::Verify {
            window,
            c,
            json: _,
            csv,
            unsafe_params,
        } => {
            let format = if csv || format_hint.as_deref() == Some("csv") {
                ReportFormat::Csv
            } else {
                ReportFormat::Json
            };
            check_format(format_hint.as_deref(), &["csv", "json"])?;
            if let Some(c) = c {
                require(c > 0.0 && c.is_finite(), "--c", "require c > 0")?;
                require(window.x >= 16, "--x", "the envelope E(x; c) needs x >= 16")?;
            }
            require(window.h >= 1, "--h", "require h >= 1")?;
            let mut config = WindowConfig::derived(window.x, window.h, &window.interval);
            if let Some(d) = window.delta {
                config.delta = d;
            }
            if let Some(t) = window.theta {
                config.theta_exp = t;
            }
            if let Some(m) = window.degree {
                config.degree = m;
            }
            require(config.degree >= 1, "--M", "degree must be at least 1")?;
            let engine = Engine::new(window.curve.clone());
            let mut v = config.violations_with(&window.interval).violations;
            v.extend(engine.window_violations(window.x, window.h).violations);
            if !v.is_empty() && !unsafe_params {
                return Err(CliError::usage(constraint_message(&v)));
            }
            Command::Verify {
                curve: window.curve,
                config,
                interval: window.interval,
                c,
                format,
                unsafe_params,
            }
        }
        Cmd::Sweep {
            config,
            curve,
            unsafe_params,
        } => {
            check_format(format_hint.as_deref(), &["csv"])?;
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::usage(format!("--config: cannot read {}: {e}", config.display())))?;
            let file = parse_sweep_config(&text).map_err(|e| CliError::usage(format!("--config: {e}")))?;
            let curve = match curve.or_else(|| file.curve.clone()) {
                Some(c) => c,
                None => {
                    return Err(CliError::usage(
                        "--curve: no curve given on the command line or in the config file",
                    ))
                }
            };
            Command::Sweep {
                curve,
                file,
                unsafe_params,
            }
        }
        Cmd::Charsum {
            field,
            curve,
            x,
            h,
            max_m,
            unsafe_params,
        } => {
            require(h >= 1, "--h", "require h >= 1")?;
            require(x.checked_add(h).is_some(), "--x/--h", "x + h must fit in 64 bits")?;
            check_format(format_hint.as_deref(), &["csv"])?;
            let field = field
                .or_else(|| curve.as_ref().map(CMCurve::field))
                .expect("clap requires one");
            if let (Some(c), false) = (&curve, unsafe_params) {
                let v = Engine::new(c.clone()).window_violations(x, h).violations;
                if !v.is_empty() {
                    return Err(CliError::usage(constraint_message(&v)));
                }
            }
            Command::Charsum {
                field,
                curve,
                x,
                h,
                max_m,
                unsafe_params,
            }
        }
        Cmd::Mu { interval } => Command::Mu { interval },
        Cmd::Plot { csv, c } => {
            require(c > 0.0 && c.is_finite(), "--c", "require c > 0")?;
            Command::Plot { csv, c }
        }
    };
    Ok(RunConfig {
        command,
        seed: cli.seed,
        threads: cli.threads,
        out_path,
    })
}

fn check_format(hint: Option<&str>, allowed: &[&str]) -> std::result::Result<(), CliError> {
    match hint {
        Some(f) if !allowed.contains(&f) => Err(CliError::usage(format!(
            "--out: this command emits {}, not {f}",
            allowed.join(" or ")
        ))),
        _ => Ok(()),
    }
}

impl RunConfig {
    fn engine_options(&self, unsafe_params: bool) -> EngineOptions {
        let base = if unsafe_params {
            EngineOptions::relaxed()
        } else {
            EngineOptions::default()
        };
        base.with_seed(self.seed)
    }
}
