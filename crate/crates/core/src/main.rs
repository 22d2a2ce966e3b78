use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as ClapSubcommand};

use projquiver::cli::{run, CommandInvocation, Format, Subcommand, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "projquiver", version, about = "Projective varieties as quiver Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Emit the quiver representation as JSON
    Build(CommonArgs),
    /// Count points of the variety over each prime field
    Points(CommonArgs),
    /// Count points of the quiver Grassmannian over each prime field
    Grass(CommonArgs),
    /// Dimension of the endomorphism algebra (over Q unless primes are given)
    Endo(CommonArgs),
    /// Check the point bijection and the Schurian property per prime
    Verify(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input `.poly` file
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated primes, each at most 97
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Write the document here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Equalize to this degree instead of the largest equation degree
    #[arg(long)]
    degree: Option<u32>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (subcommand, args) = match cli.command {
        Command::Build(a) => (Subcommand::Build, a),
        Command::Points(a) => (Subcommand::Points, a),
        Command::Grass(a) => (Subcommand::Grass, a),
        Command::Endo(a) => (Subcommand::Endo, a),
        Command::Verify(a) => (Subcommand::Verify, a),
    };
    let inv = CommandInvocation {
        subcommand,
        input_path: args.input,
        primes: args.primes,
        output_path: args.output,
        format: args.format,
        degree: args.degree,
    };
    let outcome = run(&inv);
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    }
    match &inv.output_path {
        Some(path) if outcome.error.is_none() => {
            if let Err(e) = std::fs::write(path, &outcome.document) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        _ => print!("{}", outcome.document),
    }
    ExitCode::from(outcome.exit_code as u8)
}
