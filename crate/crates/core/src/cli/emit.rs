use std::fmt::Write as _;
use std::path::Path;

use crate::equidist::{VerificationReport, CSV_HEADER};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Serializes one report; JSON is one line, CSV a header and one row.
pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => format!("{}\n", report.to_json()).into_bytes(),
        ReportFormat::Csv => format!("{CSV_HEADER}\n{}\n", report.csv_row()).into_bytes(),
    }
}

/// A gnuplot script for the sweep CSV at `path`.
pub fn emit_plot_script(path: &Path, c: f64) -> Result<String> {
    let text = std::fs::read_to_string(path)?;
    plot_script_from_csv(&text, &path.display().to_string(), c)
}

/// Plots `|rel_error|` and `E(x; c)` against `x` on a log axis. Columns are
/// referenced by name, so only `x` and `rel_error` need to be present.
pub fn plot_script_from_csv(csv: &str, data_path: &str, c: f64) -> Result<String> {
    let mut lines = csv.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .map(|h| h.split(',').map(str::trim).collect())
        .unwrap_or_default();
    let col = |name: &str| header.iter().position(|&c| c == name);
    let missing: Vec<&str> = ["x", "rel_error"].into_iter().filter(|n| col(n).is_none()).collect();
    if !header.is_empty() && !missing.is_empty() {
        return Err(Error::Parse(format!(
            "sweep CSV lacks column(s): {}",
            missing.join(", ")
        )));
    }
    let xs: Vec<f64> = match col("x") {
        Some(ix) => lines
            .filter_map(|l| l.split(',').nth(ix).and_then(|v| v.trim().parse().ok()))
            .filter(|&x: &f64| x >= 16.0)
            .collect(),
        None => Vec::new(),
    };

    let mut s = String::new();
    s.push_str("# |rel_error| and the envelope E(x; c) against x\n");
    if xs.is_empty() {
        let _ = writeln!(s, "# warning: {data_path} has no data rows; only the envelope is drawn");
    }
    let (lo, hi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    });
    let (lo, hi) = if xs.is_empty() {
        (1e3, 1e9)
    } else {
        (lo, hi.max(lo * 10.0))
    };
    s.push_str("set datafile separator \",\"\n");
    s.push_str("set logscale x\n");
    let _ = writeln!(s, "set xrange [{lo}:{hi}]");
    s.push_str("set xlabel \"x\"\n");
    s.push_str("set ylabel \"relative error\"\n");
    s.push_str("set key top right\n");
    let _ = writeln!(s, "c = {c}");
    s.push_str("E(x) = exp(-c * (log(x) / log(log(x)))**(1.0/3))\n");
    if xs.is_empty() {
        s.push_str("plot E(x) with lines title sprintf(\"E(x; c = %g)\", c)\n");
    } else {
        let _ = writeln!(
            s,
            "plot \"{data_path}\" using (column(\"x\")):(abs(column(\"rel_error\"))) with linespoints title \"|rel_error|\", \\\n     E(x) with lines title sprintf(\"E(x; c = %g)\", c)"
        );
    }
    Ok(s)
}
