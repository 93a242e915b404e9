//! Experiment harness: seeded trial batches, error quantiles, log-log fits
//! and CSV output.

mod config;
mod csv;
mod experiments;
mod plot;
mod stats;

pub use config::{config_args, parse_config, ConfigEntry};
pub use csv::{to_csv_string, write_csv, CsvRow, CSV_HEADER};
pub use experiments::{run_experiment, BitPattern, ExperimentKind, ExperimentSpec, THETA};
pub use plot::write_gnuplot;
pub use stats::{
    binomial_sigma, estimate_error_quantile, fit_loglog_slope, ErrorQuantile, LogLogFit,
};
