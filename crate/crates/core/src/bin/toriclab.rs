use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use toriclab::commands::{self, Outcome};
use toriclab::fan::DEFAULT_SEED;

/// Exact analysis of simple 3-polytopes and smooth complete 3-fans.
#[derive(Parser)]
#[command(name = "toriclab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Commands on POLY3 documents
    #[command(subcommand)]
    Polytope(PolytopeCommand),
    /// Commands on FAN3 documents
    #[command(subcommand)]
    Fan(FanCommand),
    /// Built-in example documents
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand)]
enum PolytopeCommand {
    /// Validation, 4-coloring, condition (⋆), Betti numbers, fullerene and Delzant verdicts
    Report {
        file: String,
        /// Check this CHARFUNC document instead of the coloring-derived one
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Proper 4-coloring of the facets and its characteristic function
    Color {
        file: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FanCommand {
    /// Walls, curvature, Chern number, effective cone and obstruction witness
    Report {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Edge functionals and volume for support parameters
    Volume {
        file: String,
        /// Comma-separated support parameters, one per ray
        #[arg(long, allow_hyphen_values = true)]
        support: String,
        /// Also print the volume polynomial
        #[arg(long)]
        polynomial: bool,
        #[arg(long)]
        json: bool,
    },
    /// Proportionality groups of wall classes and their extremality
    Extremal {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Vertex of degree 3 or 4 from an extremal wall of positive curvature
    Witness {
        file: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    List,
    /// Print a document; `fan/<name>` or `polytope/<name>` disambiguates
    Get { name: String },
}

fn seed() -> Result<u64, String> {
    match std::env::var("TORICLAB_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| format!("TORICLAB_SEED must be an unsigned integer, got '{s}'")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match seed() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("toriclab: {e}");
            return ExitCode::from(2);
        }
    };
    let (outcome, json): (Outcome, bool) = match cli.command {
        Command::Polytope(PolytopeCommand::Report { file, lambda, json }) => {
            (commands::cmd_polytope_report(&file, lambda.as_deref()), json)
        }
        Command::Polytope(PolytopeCommand::Color { file, json }) => (commands::cmd_polytope_color(&file), json),
        Command::Fan(FanCommand::Report { file, json }) => (commands::cmd_fan_report(&file, seed), json),
        Command::Fan(FanCommand::Volume { file, support, polynomial, json }) => {
            (commands::cmd_fan_volume(&file, &support, seed, polynomial), json)
        }
        Command::Fan(FanCommand::Extremal { file, json }) => (commands::cmd_fan_extremal(&file, seed), json),
        Command::Fan(FanCommand::Witness { file, json }) => (commands::cmd_fan_witness(&file, seed), json),
        Command::Corpus(CorpusCommand::List) => (commands::cmd_corpus_list(), false),
        Command::Corpus(CorpusCommand::Get { name }) => (commands::cmd_corpus_get(&name), false),
    };
    let text = outcome.render(json);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code as u8)
}
