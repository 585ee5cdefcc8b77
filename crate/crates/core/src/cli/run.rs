use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;

use crate::equidist::{character_sum, fmt_f64, sweep, sweep_csv, Engine};
use crate::error::{Error, Result};
use crate::primes::SieveConfig;
use crate::selberg::build_selberg;

use super::{
    emit_plot_script, emit_report, exit_code, parse_args, Command, PrimesOutput, RunConfig, SelbergEmit,
    EXIT_CONSTRAINT, EXIT_OK, EXIT_RUNTIME,
};

/// Output of a completed run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub code: i32,
    /// Lines for stderr.
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(bytes: impl Into<Vec<u8>>) -> Self {
        Outcome {
            bytes: bytes.into(),
            code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

/// Runs a validated configuration on a pool of `cfg.threads` workers.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Parameter(format!("--threads: cannot start workers: {e}")))?;
    pool.install(|| run(cfg))
}

fn run(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Primes { lo, hi, output } => {
            let primes = SieveConfig::default().primes_between(*lo, *hi)?;
            Ok(Outcome::ok(match output {
                PrimesOutput::Count => format!("{}\n", primes.len()),
                PrimesOutput::Csv => {
                    let mut s = String::with_capacity(primes.len() * 10);
                    for p in primes {
                        let _ = writeln!(s, "{p}");
                    }
                    s
                }
            }))
        }
        Command::Trace { curve, pmin, pmax } => {
            let engine = Engine::with_options(curve.clone(), cfg.engine_options(true));
            let records = engine.records(pmin.saturating_sub(1), *pmax)?;
            let mut s = String::from("p,splitting,a_p,theta_p,u,v\n");
            for r in records {
                let (u, v) = r
                    .generator
                    .map_or((String::new(), String::new()), |(u, v)| (u.to_string(), v.to_string()));
                let _ = writeln!(s, "{},{},{},{},{u},{v}", r.p, r.splitting, r.a_p, fmt_f64(r.theta_p));
            }
            Ok(Outcome::ok(s))
        }
        Command::Selberg {
            interval,
            degree,
            sign,
            emit,
        } => {
            let poly = build_selberg(*interval, *degree, *sign)?;
            let mut s = String::new();
            match emit {
                SelbergEmit::Coeffs => {
                    s.push_str("index,value\n");
                    for (m, b) in poly.coeffs().iter().enumerate() {
                        let _ = writeln!(s, "{m},{}", fmt_f64(*b));
                    }
                }
                SelbergEmit::Grid(k) => {
                    s.push_str("theta,value\n");
                    for i in 0..*k {
                        let theta = std::f64::consts::PI * i as f64 / (*k - 1) as f64;
                        let _ = writeln!(s, "{},{}", fmt_f64(theta), fmt_f64(poly.evaluate(theta)?));
                    }
                }
            }
            Ok(Outcome::ok(s))
        }
        Command::Verify {
            curve,
            config,
            interval,
            c,
            format,
            unsafe_params,
        } => {
            let engine = Engine::with_options(curve.clone(), cfg.engine_options(*unsafe_params));
            let report = engine.verify(config, interval, *c)?;
            let mut out = Outcome::ok(emit_report(&report, *format));
            if report.flagged {
                out.warnings
                    .push("warning: hypotheses violated (--unsafe-params); the report is flagged".into());
            }
            Ok(out)
        }
        Command::Sweep {
            curve,
            file,
            unsafe_params,
        } => {
            let engine = Engine::with_options(curve.clone(), cfg.engine_options(*unsafe_params));
            let rows = sweep(&engine, &file.entries);
            let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
            let mut out = Outcome::ok(sweep_csv(&rows));
            if failed > 0 {
                out.code = EXIT_CONSTRAINT;
                out.warnings
                    .push(format!("{failed} of {} configurations were not run", rows.len()));
            }
            Ok(out)
        }
        Command::Charsum {
            field,
            curve,
            x,
            h,
            max_m,
            unsafe_params,
        } => {
            let hf = *h as f64;
            let mut s = String::from("quantity,m,value,per_h\n");
            let chi = character_sum(*field, *x, *h)?;
            let _ = writeln!(s, "char_sum,,{},{}", fmt_f64(chi), fmt_f64(chi / hf));
            if let (Some(curve), Some(max_m)) = (curve, max_m) {
                let engine = Engine::with_options(curve.clone(), cfg.engine_options(*unsafe_params));
                let g = engine.grossen_sums(*x, *h, *max_m)?;
                for (m, v) in g.iter().enumerate() {
                    let _ = writeln!(s, "grossen,{m},{},{}", fmt_f64(*v), fmt_f64(v / hf));
                }
            }
            Ok(Outcome::ok(s))
        }
        Command::Mu { interval } => Ok(Outcome::ok(format!("{}\n", fmt_f64(interval.mu())))),
        Command::Plot { csv, c } => Ok(Outcome::ok(emit_plot_script(csv, *c)?)),
    }
}

/// Parses, runs and writes output; returns the process exit code.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cfg = match parse_args(args.into_iter().skip(1)) {
        Ok(cfg) => cfg,
        Err(e) if e.code == EXIT_OK => {
            print!("{}", e.message);
            return EXIT_OK;
        }
        Err(e) => {
            eprintln!("{}", e.message.trim_end());
            return e.code;
        }
    };
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    for w in &outcome.warnings {
        eprintln!("{w}");
    }
    let written = match &cfg.out_path {
        Some(path) => std::fs::write(path, &outcome.bytes),
        None => std::io::stdout().lock().write_all(&outcome.bytes),
    };
    if let Err(e) = written {
        eprintln!("error: --out: {e}");
        return EXIT_RUNTIME;
    }
    outcome.code
}
