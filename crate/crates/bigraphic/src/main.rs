use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use bigraphic::cli::{self, Command, Format, FuzzParams, InputSource, DEFAULT_BUDGET};
use bigraphic::oracle::GenMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(arg: FormatArg) -> Format {
        match arg {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Unconstrained,
    ExactSumHypotheses,
}

impl From<ModeArg> for GenMode {
    fn from(arg: ModeArg) -> GenMode {
        match arg {
            ModeArg::Unconstrained => GenMode::Unconstrained,
            ModeArg::ExactSumHypotheses => GenMode::ExactSumHypotheses,
        }
    }
}

/// Bipartite degree-interval toolkit: bigraphic checks, realizations,
/// forcibly-bigraphic criteria, witness construction, and brute-force
/// validation campaigns.
///
/// Instances are JSON documents, read from a file argument or stdin:
/// `{"intervals":{"L1":[[lo,hi],...],"L2":[[lo,hi],...]}}` or
/// `{"degrees":{"P":[...],"Q":[...]}}`.
#[derive(Parser)]
#[command(name = "bigraphic", version)]
struct Args {
    /// Output format on stdout
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a concrete degree pair (P;Q) is bigraphic
    CheckBigraphic {
        /// Instance file; stdin when omitted or "-"
        input: Option<PathBuf>,
    },
    /// Construct a bipartite realization of a degree pair
    Realize {
        input: Option<PathBuf>,
        /// Emit a flat 0-based edge list ("i j" lines) instead of JSON
        #[arg(long)]
        edges: bool,
    },
    /// Test whether any degree pair inside the intervals is realizable
    CheckExistence { input: Option<PathBuf> },
    /// Sufficient condition for the interval pair to be forcibly bigraphic
    ForciblySufficient { input: Option<PathBuf> },
    /// Necessary condition for the interval pair to be forcibly bigraphic
    ForciblyNecessary { input: Option<PathBuf> },
    /// Exact characterization under matching sum hypotheses
    ForciblyExact { input: Option<PathBuf> },
    /// Decide forcibly-bigraphic by exhaustive enumeration
    ForciblyBrute {
        input: Option<PathBuf>,
        /// Enumeration budget in search states
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Construct a non-bigraphic valid pair when the necessary condition fails
    Witness {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Cross-validate every criterion against the brute-force oracle
    Validate {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run a seeded validation campaign over random instances
    Fuzz {
        /// Base seed; instance i uses seed + i
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of instances
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        deg_max: i64,
        #[arg(long, value_enum, default_value_t = ModeArg::Unconstrained)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Parallel workers; output is byte-identical for any worker count
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn main() {
    let args = Args::parse();
    let format: Format = args.format.into();
    let command = match args.command {
        Cmd::CheckBigraphic { input } => Command::CheckBigraphic {
            input: InputSource::from_arg(input),
        },
        Cmd::Realize { input, edges } => Command::Realize {
            input: InputSource::from_arg(input),
            edges,
        },
        Cmd::CheckExistence { input } => Command::CheckExistence {
            input: InputSource::from_arg(input),
        },
        Cmd::ForciblySufficient { input } => Command::ForciblySufficient {
            input: InputSource::from_arg(input),
        },
        Cmd::ForciblyNecessary { input } => Command::ForciblyNecessary {
            input: InputSource::from_arg(input),
        },
        Cmd::ForciblyExact { input } => Command::ForciblyExact {
            input: InputSource::from_arg(input),
        },
        Cmd::ForciblyBrute { input, budget } => Command::ForciblyBrute {
            input: InputSource::from_arg(input),
            budget,
        },
        Cmd::Witness { input, budget } => Command::Witness {
            input: InputSource::from_arg(input),
            budget,
        },
        Cmd::Validate { input, budget } => Command::Validate {
            input: InputSource::from_arg(input),
            budget,
        },
        Cmd::Fuzz {
            seed,
            count,
            m_max,
            n_max,
            deg_max,
            mode,
            budget,
            workers,
        } => Command::Fuzz(FuzzParams {
            seed,
            count,
            m_max,
            n_max,
            deg_max,
            mode: mode.into(),
            budget,
            workers,
        }),
    };

    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = cli::execute(command, format, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
