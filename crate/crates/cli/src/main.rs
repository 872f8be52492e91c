use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jacobi_kit::{load_path, Failure, Report, Sampling};

/// Exact verification of Jacobi pairs, contact forms and the Spencer operator
/// of the first jet algebroid.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
/// or parse errors.
#[derive(Parser)]
#[command(name = "jacobi-kit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings (reports are then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct SamplingArgs {
    /// Base seed for the random trials.
    #[arg(long, env = "JACOBI_KIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of random trials per sampled check.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Maximal total degree of the random polynomials.
    #[arg(long)]
    degree: Option<u32>,
}

impl SamplingArgs {
    fn resolve(&self, default_degree: u32, out: Output) -> Sampling {
        Sampling {
            seed: self.seed,
            trials: self.trials,
            degree: self.degree.unwrap_or(default_degree),
            timings: out.timings,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining identities of the structure in FILE.
    Check {
        file: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Print the bracket {F, G}.
    Bracket {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the Spencer-operator axioms of the jet algebroid.
    Spencer {
        file: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Print the homogeneous Poisson bivector on FILE's chart times a line.
    Poissonize {
        file: PathBuf,
        /// Name of the new coordinate.
        #[arg(long, default_value = "t")]
        coord: String,
        #[command(flatten)]
        out: Output,
    },
    /// Print the Reeb vector field R_F of a contact form.
    Reeb {
        file: PathBuf,
        #[arg(default_value = "1")]
        f: String,
        #[arg(long)]
        json: bool,
    },
    /// Split a vector field, given by one expression per coordinate, as R_u - b(φ).
    Decompose {
        file: PathBuf,
        #[arg(required = true)]
        components: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
}

fn run(cmd: Command) -> Result<(Report, bool, Option<String>), Failure> {
    Ok(match cmd {
        Command::Check { file, sampling, out } => {
            let l = load_path(&file)?;
            (jacobi_kit::check(&l, &sampling.resolve(3, out))?, out.json, None)
        }
        Command::Bracket { file, f, g, json } => {
            let l = load_path(&file)?;
            let rep = jacobi_kit::bracket_report(&l, &f, &g)?;
            let plain = rep.results[0].1[2].value.clone();
            (rep, json, Some(plain))
        }
        Command::Spencer { file, sampling, out } => {
            let l = load_path(&file)?;
            let s = sampling.resolve(jacobi_core::jetalg::DEFAULT_DEGREE, out);
            (jacobi_kit::spencer(&l, &s)?, out.json, None)
        }
        Command::Poissonize { file, coord, out } => {
            let l = load_path(&file)?;
            (jacobi_kit::poissonize(&l, &coord, out.timings)?, out.json, None)
        }
        Command::Reeb { file, f, json } => {
            let l = load_path(&file)?;
            (jacobi_kit::reeb(&l, &f)?, json, None)
        }
        Command::Decompose { file, components, out } => {
            let l = load_path(&file)?;
            (jacobi_kit::decompose(&l, &components, out.timings)?, out.json, None)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((rep, json, plain)) => {
            if json {
                println!("{}", rep.to_json());
            } else if let Some(p) = plain {
                println!("{p}");
            } else {
                print!("{}", rep.to_text());
            }
            ExitCode::from(if rep.overall { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
