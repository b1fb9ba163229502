//! `lfi`: query chains, consistency operators and proofs from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Format, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "lfi", version, about = "Consistency operators on MTL-chains")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Chain name: a built-in (B2, L3, LP, ...) or one defined by `--load`.
    #[arg(long, global = true)]
    pub chain: Option<String>,
    /// Operator: auto, min, max, delta, crisp:<t>[:open],
    /// piecewise:<x>=<v>,...[:step], table:<v>,... or a loaded name.
    #[arg(long, global = true)]
    pub op: Option<String>,
    /// Logic profile, e.g. MTL_O, BL_Omin, MTL_O<=.
    #[arg(long, global = true)]
    pub profile: Option<String>,
    #[arg(long, global = true, default_value_t = 60)]
    pub grid_denominator: usize,
    #[arg(long, global = true, default_value_t = 8)]
    pub kmax: usize,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Single worker, so countermodels come out in search order.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Chain, operator and proof files.
    #[arg(long, global = true)]
    pub load: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print its forms.
    Parse { formula: String },
    /// Evaluate a formula under an assignment.
    Eval {
        formula: String,
        /// `p=1/2,q=1/3`.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Check that a formula takes value 1 everywhere (default chain B2).
    Taut { formula: String },
    /// Decide `premises |= goal`.
    Conseq {
        #[arg(long, value_enum, default_value_t = ModeArg::Truth)]
        mode: ModeArg,
        /// Comma-separated.
        #[arg(long, default_value = "")]
        premises: String,
        #[arg(long)]
        goal: String,
    },
    /// Check the postulates of a consistency operator.
    ValidateOp {
        /// Also the algebraic conditions (finite chains).
        #[arg(long)]
        algebraic: bool,
        /// Also the dual inconsistency operator.
        #[arg(long)]
        dual: bool,
    },
    /// List every consistency operator on a finite chain.
    EnumOps,
    /// Quotient of a finite chain by a filter.
    Quotient {
        /// Filter elements, comma-separated.
        #[arg(long, conflicts_with = "principal")]
        filter: Option<String>,
        /// Generator of a principal filter.
        #[arg(long)]
        principal: Option<String>,
    },
    /// The four LFI clauses.
    LfiReport,
    /// Check `(O p /\ O q) -> O (p # q)`.
    Propagation {
        #[arg(long)]
        connective: String,
        /// Evaluate one pair `x,y` only.
        #[arg(long)]
        at: Option<String>,
    },
    /// Check `O x <= x \/ ~x` pointwise.
    Dat,
    /// Smallest k with `(/\ O p_i)^k -> phi` valid.
    Pdat {
        formula: String,
        #[arg(long, value_enum, default_value_t = PowerArg::Fuse)]
        power: PowerArg,
    },
    /// Verify proof files.
    Prove {
        files: Vec<PathBuf>,
        /// Re-check each line semantically on the bundled finite models.
        #[arg(long)]
        bridge: bool,
    },
    /// Run a bundled check suite.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModeArg {
    Truth,
    Degree,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PowerArg {
    Fuse,
    Meet,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SuiteName {
    Paper,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let threads = if cli.global.deterministic { Some(1) } else { cli.global.jobs };
    if let Some(n) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::run(&cli.global, &cli.command) {
        Ok(report) => {
            report.print(cli.global.format);
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
