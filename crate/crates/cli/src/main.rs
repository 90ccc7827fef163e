use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mackey_cli::commands::{self, Flavor, Output};
use mackey_cli::{CliError, Workspace};

/// Exact Mackey functor, Burnside category and Bredon homology computations.
///
/// Exit codes: 0 success, 1 verification failure, 2 parse or read error,
/// 3 validation error, 4 unknown name.
#[derive(Parser)]
#[command(name = "mackey", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "pretty")]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    BredonH,
    BredonCoh,
    MackeyH,
}

#[derive(Subcommand)]
enum Command {
    /// Bredon homology or cohomology, or Mackey homology at one orbit.
    Homology {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        complex: String,
        /// A coefficient system, or a Mackey functor for mackey-h.
        #[arg(long)]
        coeff: String,
        #[arg(long, value_enum, default_value = "mackey-h")]
        flavor: FlavorArg,
        /// Orbit for mackey-h, such as G/e or G/{0,2}; defaults to G/G.
        #[arg(long)]
        orbit: Option<String>,
    },
    /// Box product of two Mackey functors, printed as a levelwise declaration.
    Box {
        #[arg(long)]
        file: PathBuf,
        left: String,
        right: String,
        /// Name of the printed declaration.
        #[arg(long)]
        name: Option<String>,
    },
    /// Compare Hom(C_M X, A) with the dual cochains degree by degree.
    Dual {
        #[arg(long)]
        file: PathBuf,
        complex: String,
        /// Candidate transformations tried per degree.
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
    /// Decide whether a Mackey functor is a module over the constant Green functor.
    CheckZbar {
        #[arg(long)]
        file: PathBuf,
        functor: String,
    },
    /// Run a verification battery.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Describe a builtin group or the declarations of a file.
    Info {
        #[arg(long, conflicts_with = "group")]
        file: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Print a file in canonical form.
    Fmt {
        #[arg(long)]
        file: PathBuf,
        /// Only report whether the file is already canonical.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum Target {
    /// The Z/2 x Z/2 sequences where fixed and cofixed point exactness differ.
    Counterexample,
    /// Fixed versus cofixed point exactness on random sequences over a cyclic group.
    Cyclic {
        #[arg(long, default_value = "Z4")]
        group: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Products of representables and the unit laws of the box product.
    Lemmas {
        #[arg(long, default_value = "Z2")]
        group: String,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Homology { file, complex, coeff, flavor, orbit } => {
            let flavor = match flavor {
                FlavorArg::BredonH => Flavor::BredonHomology,
                FlavorArg::BredonCoh => Flavor::BredonCohomology,
                FlavorArg::MackeyH => Flavor::MackeyHomology,
            };
            commands::homology(&Workspace::read(file)?, complex, coeff, flavor, orbit.as_deref())
        }
        Command::Box { file, left, right, name } => commands::boxed(&Workspace::read(file)?, left, right, name.as_deref()),
        Command::Dual { file, complex, budget } => commands::dual(&Workspace::read(file)?, complex, *budget),
        Command::CheckZbar { file, functor } => commands::check_zbar(&Workspace::read(file)?, functor),
        Command::Verify { target } => match target {
            Target::Counterexample => commands::verify_counterexample(),
            Target::Cyclic { group, samples, seed } => commands::verify_cyclic(group, *samples, *seed),
            Target::Lemmas { group } => commands::verify_lemmas(group),
        },
        Command::Info { file, group } => match (file, group) {
            (Some(f), _) => Ok(commands::info_file(&Workspace::read(f)?)),
            (None, Some(g)) => commands::info_group(g),
            (None, None) => Err(CliError::UnknownName("info needs --file or --group".into())),
        },
        Command::Fmt { file, check } => commands::fmt(&read(file)?, *check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let machine = cli.output == Format::Machine;
    match run(&cli) {
        Ok(out) => {
            if machine {
                println!("{}", out.machine);
            } else {
                print!("{}", out.pretty);
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            if machine {
                println!("{}", serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() } }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
