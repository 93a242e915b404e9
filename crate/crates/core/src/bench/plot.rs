//! Gnuplot-compatible data files.

use std::io::{self, Write};

use super::csv::CsvRow;

/// Whitespace-separated columns `x mean_quantum mean_classical error_quantile
/// success_rate`, one block per (experiment, function) separated by two blank
/// lines so that gnuplot can address them with `index`. `x` is `epsilon` when
/// present, else `n`. Missing values are written as `NaN`; summary rows are
/// skipped.
pub fn write_gnuplot<W: Write>(mut w: W, rows: &[CsvRow]) -> io::Result<()> {
    let mut current: Option<(&str, &str)> = None;
    for row in rows.iter().filter(|r| !r.is_summary()) {
        let key = (row.experiment.as_str(), row.function.as_str());
        if current != Some(key) {
            if current.is_some() {
                writeln!(w, "\n")?;
            }
            writeln!(w, "# {} {}", key.0, key.1)?;
            writeln!(
                w,
                "# x mean_quantum_queries mean_classical_queries error_quantile success_rate"
            )?;
            current = Some(key);
        }
        let x = row.epsilon.or(row.n.map(|n| n as f64));
        let cols = [
            x,
            row.mean_quantum_queries,
            row.mean_classical_queries,
            row.error_quantile,
            row.success_rate,
        ];
        let line: Vec<String> = cols
            .iter()
            .map(|c| c.map_or_else(|| "NaN".to_string(), |v| v.to_string()))
            .collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}
