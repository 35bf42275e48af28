use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ihsimp_cli::commands::{self, Suite};
use ihsimp_cli::{CliError, Outcome, Ring};

#[derive(Parser)]
#[command(name = "ihsimp", version, about = "Intersection homology and blown-up intersection cohomology of filtered complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Checks that the filtration is full; exit 1 if not.
    CheckFull { file: PathBuf },
    /// Prints the strata, addressed by (level, index).
    Strata { file: PathBuf },
    /// Writes the iterated barycentric subdivision.
    Subdivide {
        file: PathBuf,
        #[arg(short = 'k', long, default_value_t = 1)]
        depth: usize,
        #[arg(short = 'o', long = "output")]
        out: PathBuf,
    },
    /// Intersection homology, one line per degree.
    Ih {
        file: PathBuf,
        #[arg(long)]
        perversity: String,
        #[arg(long, default_value = "Z")]
        ring: Ring,
    },
    /// Blown-up intersection cohomology, one line per degree.
    Bih {
        file: PathBuf,
        #[arg(long)]
        perversity: String,
        #[arg(long, default_value = "Z")]
        ring: Ring,
    },
    /// Runs a verification suite; exit 1 if any check fails.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Built-in example complexes.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Prints the document of a built-in complex.
    Generate { name: String },
    /// Lists the built-in complexes.
    List,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::CheckFull { file } => Ok(commands::check_full(&commands::load_file(&file)?)),
        Command::Strata { file } => Ok(commands::strata(&commands::load_file(&file)?)),
        Command::Subdivide { file, depth, out } => {
            let (doc, outcome) = commands::subdivide(&commands::load_file(&file)?, depth)?;
            fs::write(&out, doc.to_json())
                .map_err(|e| CliError::Io { path: out.display().to_string(), message: e.to_string() })?;
            Ok(outcome)
        }
        Command::Ih { file, perversity, ring } => commands::ih(&commands::load_file(&file)?, &perversity, ring),
        Command::Bih { file, perversity, ring } => commands::bih(&commands::load_file(&file)?, &perversity, ring),
        Command::Verify { file, suite } => commands::verify(&commands::load_file(&file)?, suite),
        Command::Corpus { action: CorpusAction::Generate { name } } => {
            Ok(Outcome { lines: vec![commands::corpus_document(&name)?.to_json().trim_end().to_string()], failed: false })
        }
        Command::Corpus { action: CorpusAction::List } => {
            Ok(Outcome { lines: ihsimp::corpus::NAMES.iter().map(|s| s.to_string()).collect(), failed: false })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text().as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
