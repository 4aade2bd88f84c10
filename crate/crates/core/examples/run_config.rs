//! The command layer driven from a JSON config, as the `polymetric` binary
//! does: distances, verification and a plot written to a directory.
//!
//!     cargo run --example run_config -- fixtures/square_chords.json out/

use std::path::PathBuf;

use polymetric::cli::{cmd_dist, cmd_plot, cmd_verify, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = args.next().unwrap_or_else(|| "fixtures/square_chords.json".into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out".into()));
    let config = RunConfig::load(config.as_ref())?;
    println!("config hash {}", config.hash());

    let points = [[0.0, 0.0], [0.0, 0.25], [0.3, -0.2]];
    for outcome in [cmd_dist(&config, &points)?, cmd_verify(&config)?, cmd_plot(&config, "geodesics")?] {
        outcome.write_to(&out)?;
        println!("[{}] {}", outcome.exit_code, outcome.summary);
    }
    Ok(())
}
