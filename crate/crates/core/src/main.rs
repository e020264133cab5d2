use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use emit_holo::experiments::{find, registry, write_outputs, ExperimentConfig};
use emit_holo::Error;

#[derive(Parser)]
#[command(name = "emit-holo", version, about = "Run the holographic MIMO reference experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List available experiments.
    List,
    /// Run one experiment and write <out>/<experiment>.csv and .svg.
    Run {
        experiment: String,
        /// INI file replacing the shipped default config.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

const EXIT_UNKNOWN: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Validation(_) => EXIT_CONFIG,
        Error::Numerical { .. } | Error::Domain(_) => EXIT_NUMERICAL,
        Error::Io(_) => 1,
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            for e in registry() {
                println!("{:<18} {}", e.name, e.description);
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            experiment,
            config,
            out,
            seed,
        } => {
            let Some(exp) = find(&experiment) else {
                eprintln!("unknown experiment {experiment:?}; try `emit-holo list`");
                return ExitCode::from(EXIT_UNKNOWN);
            };
            let text = match &config {
                Some(p) => match std::fs::read_to_string(p) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("cannot read config {}: {e}", p.display());
                        return ExitCode::from(EXIT_CONFIG);
                    }
                },
                None => exp.default_config.to_string(),
            };
            let result = ExperimentConfig::parse(exp.name, &text, seed)
                .and_then(|cfg| exp.run(&cfg))
                .and_then(|o| write_outputs(exp.name, &o, &out).map(|files| (o, files)));
            match result {
                Ok((o, files)) => {
                    print!("{}", o.summary_text());
                    for f in files {
                        println!("wrote {}", f.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    match &e {
                        Error::Numerical { stage, residual } => {
                            eprintln!("{}: numerical failure in {stage} (residual {residual:e})", exp.name)
                        }
                        _ => eprintln!("{}: {e}", exp.name),
                    }
                    ExitCode::from(exit_code(&e))
                }
            }
        }
    }
}
