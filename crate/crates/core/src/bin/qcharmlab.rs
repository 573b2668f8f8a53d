use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::warn;

use qcharmlab::scenario::{self, run_scenario, write_artifacts};
use qcharmlab::PolarGrid;

/// Certify the bi-Lipschitz chain for quasiconformal harmonic maps of the disk.
#[derive(Parser)]
#[command(name = "qcharmlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario (config path or bundled name) and write its artifacts.
    Run {
        config: String,
        /// Output directory [default: out/<scenario name>]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the dilatation grid, as RxA (e.g. 64x1024).
        #[arg(long = "K-grid", value_name = "RxA")]
        k_grid: Option<PolarGrid>,
    },
    /// List bundled scenarios.
    List,
    /// Check a config against the schema without running it.
    Validate { config: String },
}

fn configure_threads() {
    let Ok(value) = std::env::var("QCHARMLAB_THREADS") else {
        return;
    };
    match value.parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                warn!("could not size thread pool: {e}");
            }
        }
        _ => warn!("ignoring QCHARMLAB_THREADS={value:?}"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    configure_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for name in scenario::list_scenarios() {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Validate { config } => match scenario::resolve(&config) {
            Ok((s, _)) => {
                let findings = s.diagnostics();
                if findings.is_empty() {
                    println!("{config}: ok");
                    ExitCode::SUCCESS
                } else {
                    for f in &findings {
                        println!("{config}: {f}");
                    }
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("{config}: {e}");
                ExitCode::from(2)
            }
        },
        Command::Run { config, out, seed, k_grid } => {
            let (mut s, base) = match scenario::resolve(&config) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("{config}: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Some(seed) = seed {
                s.seed = seed;
            }
            if let Some(grid) = k_grid {
                s.grids.qc = grid;
            }
            let output = match run_scenario(&s, &base) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("{config}: {e}");
                    return ExitCode::from(2);
                }
            };
            let out = out.unwrap_or_else(|| PathBuf::from("out").join(&s.name));
            if let Err(e) = write_artifacts(&output, &out) {
                eprintln!("writing {}: {e}", out.display());
                return ExitCode::from(2);
            }
            let report = &output.report;
            for st in &report.stages {
                match &st.error {
                    None => println!("stage {:<15} ok", st.stage),
                    Some(e) => println!("stage {:<15} FAILED {}: {}", st.stage, e.kind, e.message),
                }
            }
            for c in &report.checks {
                println!("check {:<17} {} {}", c.name, if c.pass { "pass" } else { "FAIL" }, c.detail);
            }
            if let Some(row) = report.summary_row() {
                print!("\n{}", qcharmlab::lipschitz::summary_table(&[row]));
            }
            println!("\n{}: {} (artifacts in {})", s.name, if report.pass { "PASS" } else { "FAIL" }, out.display());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
