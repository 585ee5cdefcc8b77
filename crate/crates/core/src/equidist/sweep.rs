use crate::error::Result;

use super::engine::Engine;
use super::interval::AngleInterval;
use super::report::{VerificationReport, CSV_HEADER};
use super::window::WindowConfig;

/// One requested configuration. Omitted exponents and degree are derived
/// with [`WindowConfig::derived`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepEntry {
    pub x: u64,
    pub h: u64,
    pub alpha: f64,
    pub beta: f64,
    pub delta: Option<f64>,
    pub theta_exp: Option<f64>,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub entry: SweepEntry,
    /// The report, or the reason the configuration was not run.
    pub outcome: std::result::Result<VerificationReport, String>,
}

impl SweepEntry {
    pub fn resolve(&self) -> Result<(WindowConfig, AngleInterval)> {
        let interval = AngleInterval::new(self.alpha, self.beta)?;
        let mut cfg = WindowConfig::derived(self.x, self.h, &interval);
        if let Some(d) = self.delta {
            cfg.delta = d;
        }
        if let Some(t) = self.theta_exp {
            cfg.theta_exp = t;
        }
        if let Some(m) = self.degree {
            cfg.degree = m;
        }
        Ok((cfg, interval))
    }
}

/// Verifies each entry in order. A failing entry becomes an error row and
/// does not stop the sweep.
pub fn sweep(engine: &Engine, entries: &[SweepEntry]) -> Vec<SweepRow> {
    entries
        .iter()
        .map(|e| SweepRow {
            entry: *e,
            outcome: e
                .resolve()
                .and_then(|(cfg, i)| engine.verify(&cfg, &i, None))
                .map_err(|err| err.to_string()),
        })
        .collect()
}

/// [`CSV_HEADER`] plus a trailing `status` column: `ok`, `flagged`, or the
/// error message for rows that did not run.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{CSV_HEADER},status\n");
    for row in rows {
        match &row.outcome {
            Ok(r) => {
                out.push_str(&r.csv_row());
                out.push_str(if r.flagged { ",flagged\n" } else { ",ok\n" });
            }
            Err(msg) => {
                let e = &row.entry;
                let blanks = ",".repeat(CSV_HEADER.split(',').count() - 4);
                out.push_str(&format!(
                    "{},{},{},{}{},{}\n",
                    e.x,
                    e.h,
                    e.alpha,
                    e.beta,
                    blanks,
                    csv_quote(msg)
                ));
            }
        }
    }
    out
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
