use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latbox::convolution::{KernelShape, KernelSpec};
use latbox_cli::commands::{self, SimulateOptions};
use latbox_cli::io::{dump_grid, format_rows, read_points, write_text};
use latbox_cli::{sphere, verify, CliError};

#[derive(Parser)]
#[command(name = "latbox", version, about = "Lattice box optimization and kernel convolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kernel {
    Triangular,
}

#[derive(Subcommand)]
enum Command {
    /// Sample points uniformly on a spherical cap.
    GenSphere {
        #[arg(long)]
        count: usize,
        /// Unit vector, comma separated.
        #[arg(long, value_parser = parse_center, allow_hyphen_values = true)]
        center: [f64; 3],
        #[arg(long)]
        radius_deg: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find the integer transformation that minimizes the enclosing box.
    Optimize {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Unconditional simulation read back at the input points.
    Simulate {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        step: f64,
        #[arg(long, value_enum, default_value = "triangular")]
        kernel: Kernel,
        #[arg(long)]
        bandwidth: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Convolve in the original coordinates.
        #[arg(long)]
        identity: bool,
        #[arg(long)]
        out: PathBuf,
        /// Write the simulated grid to PREFIX.bin and PREFIX.json.
        #[arg(long, value_name = "PREFIX")]
        dump_grid: Option<PathBuf>,
    },
    /// Run oracle suites; prints one JSON line per suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Coverage table of the tetrahedron heuristics.
    Stats {
        #[arg(long)]
        n_max: i64,
        /// Allow n_max above 1024.
        #[arg(long)]
        long: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_center(s: &str) -> Result<[f64; 3], String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|v| format!("expected 3 components, found {}", v.len()))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::GenSphere {
            count,
            center,
            radius_deg,
            seed,
            out,
        } => {
            let pts = sphere::sample_cap(count, center, radius_deg, seed)?;
            write_text(&out, &format_rows(&pts))?;
        }
        Command::Optimize { points, step, out } => {
            let report = commands::optimize(&read_points(&points)?, step)?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Parse(e.to_string()))?;
            write_text(&out, &(text + "\n"))?;
        }
        Command::Simulate {
            points,
            step,
            kernel,
            bandwidth,
            seed,
            identity,
            out,
            dump_grid: dump,
        } => {
            let shape = match kernel {
                Kernel::Triangular => KernelShape::Triangular,
            };
            let opts = SimulateOptions {
                step,
                kernel: KernelSpec::new(shape, bandwidth)?,
                seed,
                identity,
            };
            let res = commands::simulate(&read_points(&points)?, &opts)?;
            let rows: Vec<[f64; 1]> = res.simulation.values.iter().map(|&v| [v]).collect();
            write_text(&out, &format_rows(&rows))?;
            if let Some(prefix) = dump {
                dump_grid(&prefix, &res.simulation.field, step, &commands::matrix_rows(&res.matrix))?;
            }
        }
        Command::Verify { suite } => {
            let reports = verify::run(&suite)?;
            for r in &reports {
                println!("{}", serde_json::to_string(r).map_err(|e| CliError::Parse(e.to_string()))?);
            }
            return Ok(reports.iter().all(|r| r.passed));
        }
        Command::Stats { n_max, long, out } => {
            let s = commands::stats(n_max, long)?;
            write_text(&out, &commands::stats_csv(&s)?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
