use crate::equidist::SweepEntry;
use crate::error::{Error, Result};
use crate::traces::CMCurve;

/// A parsed sweep file.
///
/// ```text
/// curve = d1
/// h = 100000          # keys above the first [window] are defaults
///
/// [window]
/// x = 1000000
/// interval = 0.5,1.0
///
/// [window]
/// x = 10000000
/// h = 1000000
/// interval = 0.5,1.0
/// delta = 0.15
/// theta = 0.05
/// M = 64
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFile {
    pub curve: Option<CMCurve>,
    pub entries: Vec<SweepEntry>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Partial {
    x: Option<u64>,
    h: Option<u64>,
    interval: Option<(f64, f64)>,
    delta: Option<f64>,
    theta: Option<f64>,
    degree: Option<usize>,
}

impl Partial {
    fn over(self, base: &Partial) -> Partial {
        Partial {
            x: self.x.or(base.x),
            h: self.h.or(base.h),
            interval: self.interval.or(base.interval),
            delta: self.delta.or(base.delta),
            theta: self.theta.or(base.theta),
            degree: self.degree.or(base.degree),
        }
    }

    fn finish(self, block: usize) -> Result<SweepEntry> {
        let missing = |k: &str| Error::Parse(format!("[window] block {block} has no `{k}`"));
        let (alpha, beta) = self.interval.ok_or_else(|| missing("interval"))?;
        Ok(SweepEntry {
            x: self.x.ok_or_else(|| missing("x"))?,
            h: self.h.ok_or_else(|| missing("h"))?,
            alpha,
            beta,
            delta: self.delta,
            theta_exp: self.theta,
            degree: self.degree,
        })
    }
}

/// Parses `key = value` lines with `[window]` blocks; `#` starts a comment.
///
/// Intervals are only split into two numbers here, so a reversed interval
/// becomes an error row of the sweep rather than a parse failure.
pub fn parse_sweep_config(text: &str) -> Result<SweepFile> {
    let mut curve = None;
    let mut defaults = Partial::default();
    let mut blocks: Vec<Partial> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::Parse(format!("line {}: {msg}", i + 1));
        if let Some(section) = line.strip_prefix('[') {
            match section.strip_suffix(']').map(str::trim) {
                Some("window") => blocks.push(Partial::default()),
                _ => return Err(at(format!("unknown section `{line}`"))),
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| at(format!("expected `key = value`, got `{line}`")))?;
        if key == "curve" {
            if !blocks.is_empty() {
                return Err(at("`curve` must precede the first [window]".into()));
            }
            curve = Some(value.parse::<CMCurve>().map_err(|e| at(e.to_string()))?);
            continue;
        }
        let target = blocks.last_mut().unwrap_or(&mut defaults);
        let num = |v: &str| -> Result<f64> { v.parse().map_err(|_| at(format!("`{key}`: `{v}` is not a number"))) };
        let int = |v: &str| -> Result<u64> {
            v.replace('_', "")
                .parse()
                .map_err(|_| at(format!("`{key}`: `{v}` is not a non-negative integer")))
        };
        match key {
            "x" => target.x = Some(int(value)?),
            "h" => target.h = Some(int(value)?),
            "delta" => target.delta = Some(num(value)?),
            "theta" => target.theta = Some(num(value)?),
            "M" => target.degree = Some(int(value)? as usize),
            "interval" => {
                let (a, b) = value
                    .split_once(',')
                    .ok_or_else(|| at(format!("`interval`: expected alpha,beta, got `{value}`")))?;
                target.interval = Some((num(a.trim())?, num(b.trim())?));
            }
            _ => return Err(at(format!("unknown key `{key}`"))),
        }
    }
    let entries = blocks
        .into_iter()
        .enumerate()
        .map(|(k, b)| b.over(&defaults).finish(k + 1))
        .collect::<Result<_>>()?;
    Ok(SweepFile { curve, entries })
}
