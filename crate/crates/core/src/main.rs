use std::path::PathBuf;
use std::process::ExitCode;

use acoustophoresis::cli::{run_field, run_force, run_particle, run_simulate, SceneConfig, Sweep};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// Acoustic radiation force, torque and acoustophoresis of axisymmetric particles.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scene file (TOML); defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files, overriding the scene file.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Expansion degree, overriding the automatic choice.
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Export the particle surface as STL.
    Particle,
    /// Sample the incident pressure on the xOz plane.
    Field,
    /// Radiation force and torque, optionally over an orientation sweep.
    Force {
        /// Orientation sweep `axis=min:max:count` (axis x, y or z; radians).
        #[arg(long)]
        sweep: Option<Sweep>,
    },
    /// Integrate the particle's motion above a transducer array.
    Simulate,
}

fn run(cli: Cli) -> acoustophoresis::Result<String> {
    let mut config = match &cli.config {
        Some(path) => SceneConfig::load(path)?,
        None => SceneConfig::default(),
    };
    if let Some(dir) = cli.out_dir {
        config.outputs.directory = dir;
    }
    if cli.n_max.is_some() {
        config.numerics.n_max = cli.n_max;
    }
    Ok(match cli.command {
        Command::Particle => run_particle(&config)?.to_string(),
        Command::Field => run_field(&config)?.to_string(),
        Command::Force { sweep } => run_force(&config, sweep)?.to_string(),
        Command::Simulate => run_simulate(&config)?.to_string(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let quiet = cli.quiet;
    match run(cli) {
        Ok(summary) => {
            if !quiet {
                println!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
