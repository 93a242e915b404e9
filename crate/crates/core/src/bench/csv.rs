//! Flat CSV schema shared by every experiment.

use std::fmt::Write as _;
use std::io::{self, Write};

pub const CSV_HEADER: &str = "experiment,function,d,r,rho,n,N,epsilon,trials,master_seed,success_rate,mean_quantum_queries,mean_classical_queries,mean_evaluations,error_quantile_theta25,slope,intercept,r2";

/// One CSV row; `None` fields are written empty.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvRow {
    pub experiment: String,
    pub function: String,
    pub d: Option<usize>,
    pub r: Option<u32>,
    pub rho: Option<f64>,
    pub n: Option<usize>,
    pub big_n: Option<usize>,
    pub epsilon: Option<f64>,
    pub trials: Option<usize>,
    pub master_seed: Option<u64>,
    pub success_rate: Option<f64>,
    pub mean_quantum_queries: Option<f64>,
    pub mean_classical_queries: Option<f64>,
    pub mean_evaluations: Option<f64>,
    pub error_quantile: Option<f64>,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub r2: Option<f64>,
}

fn field<T: std::fmt::Display>(out: &mut String, v: &Option<T>) {
    out.push(',');
    if let Some(v) = v {
        let _ = write!(out, "{v}");
    }
}

impl CsvRow {
    /// Summary rows carry a fitted slope.
    pub fn is_summary(&self) -> bool {
        self.slope.is_some()
    }

    pub fn to_line(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.experiment);
        out.push(',');
        out.push_str(&self.function);
        field(&mut out, &self.d);
        field(&mut out, &self.r);
        field(&mut out, &self.rho);
        field(&mut out, &self.n);
        field(&mut out, &self.big_n);
        field(&mut out, &self.epsilon);
        field(&mut out, &self.trials);
        field(&mut out, &self.master_seed);
        field(&mut out, &self.success_rate);
        field(&mut out, &self.mean_quantum_queries);
        field(&mut out, &self.mean_classical_queries);
        field(&mut out, &self.mean_evaluations);
        field(&mut out, &self.error_quantile);
        field(&mut out, &self.slope);
        field(&mut out, &self.intercept);
        field(&mut out, &self.r2);
        out
    }
}

pub fn write_csv<W: Write>(mut w: W, rows: &[CsvRow]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.to_line())?;
    }
    Ok(())
}

pub fn to_csv_string(rows: &[CsvRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
