//! Command-line front end: argument parsing and dispatch only; all work
//! happens in [`crate::commands`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::checks::Level;
use crate::commands;
use crate::config::{self, OutputKind, SimulationSpec};
use crate::error::{Error, Result};
use crate::sde::{Scheme, TimeGrid};

#[derive(Parser)]
#[command(
    name = "nongauss",
    about = "Simulate and validate non-Gaussian translation processes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation spec and write CSV/JSON outputs
    Simulate(SimulateArgs),
    /// Print the standardization constants (location, scale) for the six
    /// showcase laws
    Table1 {
        /// Also write the table as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the marginal-density study: one histogram CSV per panel
    Figure1(Figure1Args),
    /// Run the named validation checks and write a report
    Validate {
        /// fast (10^3 paths) or full (10^4 paths)
        #[arg(long, default_value = "full")]
        level: String,
        /// Directory for the report JSON
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Emit the Cornish-Fisher deviation and cumulant sensitivities on a grid
    CornishFisher {
        /// Standardized third cumulant kappa_3
        #[arg(long, default_value_t = 0.0)]
        skew: f64,
        /// Standardized fourth cumulant kappa_4
        #[arg(long, default_value_t = 0.0)]
        kurt: f64,
        /// Evaluation time for the sensitivities
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Output CSV file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SimulateArgs {
    /// Configuration file (key = value lines); flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base seed
    #[arg(long)]
    seed: Option<u64>,
    /// Number of paths
    #[arg(long)]
    paths: Option<usize>,
    /// Grid step
    #[arg(long)]
    dt: Option<f64>,
    /// Horizon T (sets n_steps = T/dt)
    #[arg(long)]
    horizon: Option<f64>,
    /// Distribution descriptor, e.g. student_t{nu=10}
    #[arg(long)]
    dist: Option<String>,
    /// Scheme: exact, rw_drift, rw_nodrift, binary_walk or brownian
    #[arg(long)]
    scheme: Option<String>,
    /// Output directory for the default endpoints.csv + report.json when the
    /// config names no outputs
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Figure1Args {
    /// Output directory for the panel CSVs
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    paths: usize,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    #[arg(long, default_value_t = 10.0)]
    horizon: f64,
    #[arg(long, default_value_t = 20_260_101)]
    seed: u64,
}

fn build_simulate_spec(args: &SimulateArgs) -> Result<SimulationSpec> {
    let mut spec = match &args.config {
        Some(path) => SimulationSpec::parse(&std::fs::read_to_string(path)?)?,
        None => {
            let dist = args
                .dist
                .as_deref()
                .ok_or_else(|| Error::config("dist", "required without --config"))?;
            let dt = args.dt.unwrap_or(0.01);
            let horizon = args.horizon.unwrap_or(10.0);
            SimulationSpec::basic(
                config::parse_family(dist)?,
                TimeGrid::with_horizon(dt, horizon)?,
                Scheme::ExactTransform,
                100,
                0,
            )
        }
    };
    if let Some(dist) = &args.dist {
        spec.family = config::parse_family(dist)?;
    }
    if let Some(scheme) = &args.scheme {
        spec.scheme = Scheme::parse(scheme)?;
    }
    if let Some(seed) = args.seed {
        spec.base_seed = seed;
    }
    if let Some(paths) = args.paths {
        spec.n_paths = paths;
    }
    if args.dt.is_some() || args.horizon.is_some() {
        let dt = args.dt.unwrap_or(spec.grid.dt());
        let horizon = args.horizon.unwrap_or(spec.grid.horizon());
        spec.grid = TimeGrid::with_horizon(dt, horizon)?;
    }
    if spec.outputs.is_empty() {
        let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
        spec.outputs = vec![
            (OutputKind::EndpointsCsv, dir.join("endpoints.csv")),
            (OutputKind::ReportJson, dir.join("report.json")),
        ];
    } else if let Some(dir) = &args.out {
        for (_, path) in &mut spec.outputs {
            *path = dir.join(&path);
        }
    }
    spec.validate()?;
    Ok(spec)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate(args) => {
            let spec = build_simulate_spec(&args)?;
            let report = commands::cmd_simulate(&spec)?;
            println!(
                "simulated {} paths ({} aborted, {} tail clamps)",
                spec.n_paths,
                report["aborted"].as_array().map_or(0, |a| a.len()),
                report["clamp_count"]
            );
            for (kind, path) in &spec.outputs {
                println!("wrote {} -> {}", kind.key(), path.display());
            }
            Ok(0)
        }
        Command::Table1 { out } => {
            let rows = commands::cmd_table1()?;
            println!("{:<24} {:>12} {:>12}", "distribution", "location", "scale");
            for row in &rows {
                println!(
                    "{:<24} {:>12.6} {:>12.6}",
                    row.descriptor, row.location, row.scale
                );
            }
            if let Some(path) = out {
                let body = crate::output::report_json(&serde_json::json!({ "rows": rows }));
                crate::output::atomic_write(&path, &body)?;
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::Figure1(args) => {
            let written =
                commands::cmd_figure1(&args.out, args.paths, args.dt, args.horizon, args.seed)?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::Validate { level, out } => {
            let level = Level::parse(&level)?;
            let (results, report_path) = commands::cmd_validate(level, &out)?;
            for r in &results {
                println!("{}", r.line());
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            println!(
                "{} checks, {} failed; report: {}",
                results.len(),
                failed,
                report_path.display()
            );
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::CornishFisher { skew, kurt, t, out } => {
            let csv = commands::cmd_cornish_fisher(skew, kurt, t, out.as_deref())?;
            match out {
                Some(path) => println!("wrote {}", path.display()),
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/version output
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
