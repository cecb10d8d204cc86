use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use monact::actions::{DEFAULT_CONGRUENCE_CAP, DEFAULT_POWER_SET_CAP};
use monact_cli::commands::{self, Caps, FraisseRun};
use monact_cli::report::{Report, Timing, EXIT_VALIDATION};
use monact_cli::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "monact",
    version,
    about = "Finite monoid actions, topologies and Fraïssé chains"
)]
struct Cli {
    /// Emit the structured report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest M-set kept in the brute-force corpus.
    #[arg(long, global = true, default_value_t = 6)]
    cap_mset_size: usize,
    /// Largest monoid whose power set P(M) is materialized.
    #[arg(long, global = true, default_value_t = DEFAULT_POWER_SET_CAP)]
    cap_subsets: usize,
    /// Largest monoid whose right congruences are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CONGRUENCE_CAP)]
    cap_congruences: usize,
    /// Record wall-clock timing in the report (outside the payload).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Algebraic and topos-theoretic profile, cross-checked by brute force.
    Analyze { monoid: PathBuf },
    /// The lattice and category of right congruences.
    Congruences { monoid: PathBuf },
    /// Action topology, powder quotient and completion for a topology.
    Complete { monoid: PathBuf, topology: PathBuf },
    /// Isomorphism search and Morita witnesses for two monoids.
    Morita { first: PathBuf, second: PathBuf },
    #[command(subcommand)]
    Monogenic(MonogenicCommand),
    #[command(subcommand)]
    Fraisse(FraisseCommand),
}

#[derive(Debug, Subcommand)]
enum MonogenicCommand {
    /// Shapes of every element of a step-function file.
    Classify { file: PathBuf },
    /// Epi, mono and joint-cover rules for N_{a,b} and N_{c,d}.
    Compare { a: usize, b: usize, c: usize, d: usize },
    /// The depth-K truncation of the profinite completion of ℕ.
    Profinite { depth: usize },
}

#[derive(Debug, Subcommand)]
enum FraisseCommand {
    /// Build a chain and tabulate its deficit and universality.
    Run {
        /// lin_orders, finset_inj, cyclic_p_groups(p) or a category file.
        system: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Index of the starting object.
        #[arg(long, default_value_t = 0)]
        seed: usize,
        /// Problems must be solved by this stage.
        #[arg(long, default_value_t = 5)]
        deficit_stage: usize,
        /// Problems use the first N objects and are posed by stage N.
        #[arg(long, default_value_t = 3)]
        deficit_problems: usize,
        /// Tabulate universality for the first N objects.
        #[arg(long, default_value_t = 5)]
        universality: usize,
    },
    /// Check the T and M classes of a category file.
    OfsValidate { category: PathBuf },
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let caps = Caps {
        mset_size: cli.cap_mset_size,
        subsets: cli.cap_subsets,
        congruences: cli.cap_congruences,
    };
    match &cli.command {
        Command::Analyze { monoid } => commands::analyze(monoid, caps),
        Command::Congruences { monoid } => commands::congruences(monoid, caps),
        Command::Complete { monoid, topology } => commands::complete(monoid, topology, caps),
        Command::Morita { first, second } => commands::morita(first, second),
        Command::Monogenic(MonogenicCommand::Classify { file }) => commands::monogenic_classify(file),
        Command::Monogenic(MonogenicCommand::Compare { a, b, c, d }) => commands::monogenic_compare((*a, *b), (*c, *d)),
        Command::Monogenic(MonogenicCommand::Profinite { depth }) => commands::monogenic_profinite(*depth),
        Command::Fraisse(FraisseCommand::Run {
            system,
            steps,
            seed,
            deficit_stage,
            deficit_problems,
            universality,
        }) => commands::fraisse_run(
            system,
            FraisseRun {
                steps: *steps,
                seed: *seed,
                deficit_stage: *deficit_stage,
                deficit_problems: *deficit_problems,
                universality: *universality,
            },
        ),
        Command::Fraisse(FraisseCommand::OfsValidate { category }) => commands::fraisse_ofs(category),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let report = Report {
        command: std::env::args().skip(1).collect(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        inputs: outcome.inputs,
        payload: outcome.payload,
        warnings: outcome.warnings,
        timing: cli.timing.then(|| Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        }),
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        for line in &outcome.text {
            println!("{line}");
        }
        for w in &report.warnings {
            println!("warning: {w}");
        }
        if let Some(t) = &report.timing {
            println!("elapsed: {} ms", t.elapsed_ms);
        }
    }
    match outcome.failure {
        Some(f) => {
            eprintln!("validation failure: {f}");
            ExitCode::from(EXIT_VALIDATION as u8)
        }
        None => ExitCode::SUCCESS,
    }
}
