//! Text renderers for the CLI: CSV, audit tables, gnuplot scripts, and the
//! report timestamp. Everything here is a pure function of its inputs so
//! repeated runs produce byte-identical files.

use std::path::Path;

use remo::audit::AuditSummary;
use remo::criteria::Criterion;
use remo::sweep::SweepRow;

/// Full-double-precision cell format: 17 significant digits.
fn cell(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render sweep rows as CSV. Columns: `param,r1,r2,r3,f` plus one margin
/// column per selected criterion (snake_case id).
pub fn sweep_csv(rows: &[SweepRow], criteria: &[Criterion]) -> String {
    let mut out = String::from("param,r1,r2,r3,f");
    for c in criteria {
        out.push(',');
        out.push_str(&c.id().replace('-', "_"));
    }
    out.push('\n');
    for row in rows {
        out.push_str(&cell(row.param));
        for v in [row.r1, row.r2, row.r3, row.f] {
            out.push(',');
            out.push_str(&cell(v));
        }
        for &m in &row.margins {
            out.push(',');
            out.push_str(&cell(m));
        }
        out.push('\n');
    }
    out
}

/// Deterministic text table for an audit run.
pub fn audit_text(summary: &AuditSummary, violation_path: &Path) -> String {
    let mut out = format!(
        "audit dims={} samples={} seed={}\n",
        summary.dims, summary.samples, summary.seed
    );
    for (ensemble, counts) in &summary.detections {
        out.push_str(&format!("ensemble={}\n", ensemble.id()));
        for (criterion, count) in counts {
            out.push_str(&format!("  {:<9} {}\n", criterion.id(), count));
        }
    }
    out.push_str(&format!("invariant checks passed: {}\n", summary.invariant_checks));
    match &summary.violation {
        None => out.push_str("ok\n"),
        Some(v) => {
            out.push_str(&format!(
                "VIOLATION ensemble={} sample={} seed={}\n  {}\n  offending state written to {}\n  reproduce with: remo analyze {}\n",
                v.ensemble.id(),
                v.sample_index,
                v.state_seed,
                v.description,
                violation_path.display(),
                violation_path.display(),
            ));
        }
    }
    out
}

/// Build a self-contained gnuplot script from sweep CSV text. The CSV is
/// embedded as an inline data block, a zero line is drawn, and if the `f`
/// column changes sign a dashed marker is placed at the interpolated
/// crossing.
pub fn plot_script(csv: &str, source_name: &str) -> Result<String, String> {
    let mut lines = csv.lines();
    let header = lines.next().ok_or("CSV is empty")?;
    let columns: Vec<&str> = header.split(',').collect();
    let param_idx = columns
        .iter()
        .position(|c| *c == "param")
        .ok_or("CSV has no \"param\" column")?;
    let f_idx = columns
        .iter()
        .position(|c| *c == "f")
        .ok_or("CSV has no \"f\" column")?;

    let mut points: Vec<(f64, f64)> = Vec::new();
    for (row_number, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(format!(
                "CSV row {} has {} fields, header has {}",
                row_number + 2,
                fields.len(),
                columns.len()
            ));
        }
        let parse = |idx: usize| -> Result<f64, String> {
            fields[idx]
                .parse()
                .map_err(|_| format!("CSV row {} field \"{}\" is not a number", row_number + 2, fields[idx]))
        };
        points.push((parse(param_idx)?, parse(f_idx)?));
    }
    if points.is_empty() {
        return Err("CSV has no data rows".to_string());
    }

    // Interpolated sign change of f, if there is one.
    let crossing = points.windows(2).find_map(|w| {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if y0 * y1 < 0.0 {
            Some(x0 - y0 * (x1 - x0) / (y1 - y0))
        } else {
            None
        }
    });

    let mut script = String::from("#!/usr/bin/env gnuplot\n");
    script.push_str(&format!("# generated by remo plot from {source_name}\n"));
    script.push_str("set datafile separator \",\"\n");
    script.push_str("set datafile columnheaders\n");
    script.push_str("set xlabel \"param\"\n");
    script.push_str("set ylabel \"f = r3 - r2^2\"\n");
    script.push_str("set grid\n");
    script.push_str("set key left bottom\n");
    script.push_str("$sweep << EOD\n");
    script.push_str(csv);
    if !csv.ends_with('\n') {
        script.push('\n');
    }
    script.push_str("EOD\n");
    if let Some(x) = crossing {
        script.push_str(&format!(
            "set arrow 1 from {x:.12e}, graph 0 to {x:.12e}, graph 1 nohead dashtype 2 lc rgb \"#777777\"\n"
        ));
        script.push_str(&format!("set label 1 \"threshold {x:.6}\" at {x:.12e}, graph 0.95 offset 1,0\n"));
    }
    script.push_str(
        "plot $sweep using \"param\":\"f\" with lines lw 2 lc rgb \"#1f77b4\" title \"f\", \\\n     0 with lines lc rgb \"#bbbbbb\" notitle\n",
    );
    Ok(script)
}

/// RFC 3339 UTC timestamp for report metadata.
pub fn utc_timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let (days, rem) = (secs / 86_400, secs % 86_400);
    let (hh, mm, ss) = (rem / 3600, (rem % 3600) / 60, rem % 60);
    // Civil date from day count (days since 1970-01-01).
    let z = days as i64 + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let y = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = doy - (153 * mp + 2) / 5 + 1;
    let m = if mp < 10 { mp + 3 } else { mp - 9 };
    let y = if m <= 2 { y + 1 } else { y };
    format!("{y:04}-{m:02}-{d:02}T{hh:02}:{mm:02}:{ss:02}Z")
}

/// Print to stdout or write to a file.
pub fn write_output(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}
