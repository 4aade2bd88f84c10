use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polymetric::cli::{self, CliError, Outcome, RunConfig};

#[derive(Parser)]
#[command(version, about = "Metrics with prescribed geodesics on convex polygons")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance and truncation-bound matrices between points.
    Dist {
        #[arg(long)]
        config: PathBuf,
        /// JSON array of [x, y] pairs.
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Parallel-ray and geodesic-uniqueness comparison with the Hilbert metric.
    CompareHilbert {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Render geodesics, supports or profiles as SVG.
    Plot {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        what: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(command: Command) -> Result<(Outcome, PathBuf), CliError> {
    Ok(match command {
        Command::Dist { config, points, out } => {
            let config = RunConfig::load(&config)?;
            let text = std::fs::read_to_string(&points)
                .map_err(|e| CliError::data(format!("cannot read {}: {e}", points.display())))?;
            (cli::cmd_dist(&config, &cli::parse_points(&text)?)?, out)
        }
        Command::Verify { config, out } => (cli::cmd_verify(&RunConfig::load(&config)?)?, out),
        Command::CompareHilbert { config, out } => {
            (cli::cmd_compare_hilbert(&RunConfig::load(&config)?)?, out)
        }
        Command::Plot { config, what, out } => {
            (cli::cmd_plot(&RunConfig::load(&config)?, &what)?, out)
        }
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok((outcome, out)) => {
            if let Err(e) = outcome.write_to(&out) {
                eprintln!("error: cannot write to {}: {e}", out.display());
                return ExitCode::from(cli::EXIT_DATA);
            }
            println!("{}", outcome.summary);
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
