use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qmax::bench::{
    config_args, parse_config, run_experiment, write_csv, write_gnuplot, CsvRow, ExperimentKind,
    ExperimentSpec,
};
use qmax::holder::{registered_functions, ClassParams};
use qmax::SearchParams;

#[derive(Parser)]
#[command(name = "qmax", version, about = "Quantum maximization experiments")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exponential search for one marked index, swept over n.
    QsearchBench(Common),
    /// Success rate and query cost of the discrete maximum finder.
    MaxfindBench(Common),
    /// Error of the continuous maximizer on fixed grids, swept over n.
    HolderMax(Common),
    /// Query cost against accuracy for the quantum and classical maximizers.
    Scaling(Common),
    /// OR of n bits computed through the maximizer.
    LowerboundDemo(Common),
    /// Print the registered test functions.
    ListFunctions,
}

#[derive(Args)]
#[command(args_override_self = true)]
struct Common {
    /// key=value file supplying any of these flags; the command line wins.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Gnuplot data file written alongside the CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    rho: Option<f64>,
    /// Sweep values, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Accuracy targets, comma separated.
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    boost_rounds: Option<u32>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    budget_factor: Option<f64>,
}

impl Common {
    fn spec(&self, kind: ExperimentKind) -> Result<ExperimentSpec, String> {
        let mut spec = ExperimentSpec::new(kind);
        spec.master_seed = self.seed;
        if let Some(t) = self.trials {
            spec.trials = t;
        }
        let class = ClassParams {
            d: self.d.unwrap_or(spec.class.d),
            r: self.r.unwrap_or(spec.class.r),
            rho: self.rho.unwrap_or(spec.class.rho),
        };
        spec.class = class;
        if let Some(n) = &self.n {
            spec.n_values = n.clone();
        }
        if let Some(eps) = &self.eps {
            spec.eps_values = eps.clone();
        }
        if let Some(f) = &self.function {
            spec.function = f.clone();
        }
        let defaults = SearchParams::default();
        spec.search = SearchParams {
            lambda: self.lambda.unwrap_or(defaults.lambda),
            budget_factor: self.budget_factor.unwrap_or(defaults.budget_factor),
            boost_rounds: self.boost_rounds.unwrap_or(defaults.boost_rounds),
        };
        Ok(spec)
    }
}

/// Splices the contents of any `--config` file in right after the subcommand,
/// so that flags given on the command line are parsed later and win.
fn expand_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = Some(args.get(i + 1).ok_or("--config needs a path")?.clone());
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("reading {path}: {e}"))?;
    let entries = parse_config(&text).map_err(|e| format!("{path}: {e}"))?;
    let sub = args
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map_or(args.len(), |p| p + 2);
    let mut out = args[..sub.min(args.len())].to_vec();
    out.extend(config_args(&entries));
    out.extend_from_slice(&args[sub.min(args.len())..]);
    Ok(out)
}

fn emit(common: &Common, rows: &[CsvRow]) -> Result<(), String> {
    match &common.out {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| format!("creating {}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_csv(&mut w, rows).and_then(|_| w.flush())
        }
        None => write_csv(io::stdout().lock(), rows),
    }
    .map_err(|e| format!("writing CSV: {e}"))?;
    if let Some(path) = &common.plot {
        let file = File::create(path).map_err(|e| format!("creating {}: {e}", path.display()))?;
        let mut w = BufWriter::new(file);
        write_gnuplot(&mut w, rows)
            .and_then(|_| w.flush())
            .map_err(|e| format!("writing plot data: {e}"))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), String> {
    let (common, kinds): (&Common, &[ExperimentKind]) = match &cli.command {
        Command::ListFunctions => {
            for f in registered_functions() {
                println!("{:<12} d={:<4} {}", f.name, f.dims, f.description);
            }
            return Ok(());
        }
        Command::QsearchBench(c) => (c, &[ExperimentKind::QsearchScaling]),
        Command::MaxfindBench(c) => (c, &[ExperimentKind::MaxfindSuccess]),
        Command::HolderMax(c) => (c, &[ExperimentKind::HolderErrorVsN]),
        Command::Scaling(c) => (
            c,
            &[
                ExperimentKind::HolderQueriesVsEps,
                ExperimentKind::BaselineQueriesVsEps,
            ],
        ),
        Command::LowerboundDemo(c) => (c, &[ExperimentKind::OrReduction]),
    };
    let mut rows = Vec::new();
    for &kind in kinds {
        let spec = common.spec(kind)?;
        rows.extend(run_experiment(&spec).map_err(|e| e.to_string())?);
    }
    emit(common, &rows)
}

fn main() -> ExitCode {
    let args = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("qmax: error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qmax: error: {e}");
            ExitCode::FAILURE
        }
    }
}
