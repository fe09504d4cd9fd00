mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mcg_core::SurfaceSig;

#[derive(Debug, Parser)]
#[command(
    name = "mcgrep",
    version,
    about = "Exact (2g+1)-dimensional representations of pure mapping class groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Genus of the surface.
    #[arg(short = 'g', long = "genus", global = true)]
    pub genus: Option<u32>,
    /// Number of punctures.
    #[arg(short = 'r', long = "punctures", global = true, default_value_t = 0)]
    pub punctures: u32,
    /// Number of boundary components.
    #[arg(short = 'p', long = "boundary", global = true, default_value_t = 0)]
    pub boundary: u32,
    /// Input file, `-` for stdin. `equiv` takes two.
    #[arg(short = 'i', long = "input", global = true)]
    pub input: Vec<PathBuf>,
    /// Output file, `-` (the default) for stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = mcg_core::selftest::DEFAULT_SEED)]
    pub seed: u64,
}

impl Common {
    /// The signature from the flags, if a genus was given.
    pub fn sig(&self) -> anyhow::Result<Option<SurfaceSig>> {
        self.genus
            .map(|g| Ok(SurfaceSig::new(g, self.boundary, self.punctures)?))
            .transpose()
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every generator matrix of the symplectic representation, plus G and J.
    Gen,
    /// Check the braid and commuting relations exactly.
    Relcheck,
    /// Build phi_c from a cocycle file.
    BuildRep,
    /// Eigenvalue-1 report for every generator image of a representation file.
    Analyze,
    /// Decide type A / type B for a representation file and extract its cocycle.
    Classify,
    /// Run a normal-form solver on a JSON list of matrices.
    Normalize,
    /// Decide whether two cocycles agree up to a scalar and a coboundary.
    Equiv,
    /// Run the seeded invariant suite.
    Selftest {
        /// Run only these criteria (1-9).
        #[arg(long = "only")]
        only: Vec<u8>,
    },
}

/// How a command ended: 0 for pass or feasible, 1 for checked-and-failed.
pub enum Status {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let c = &cli.common;
    let outcome = match cli.command {
        Command::Gen => commands::gen(c),
        Command::Relcheck => commands::relcheck(c),
        Command::BuildRep => commands::build_rep(c),
        Command::Analyze => commands::analyze(c),
        Command::Classify => commands::classify(c),
        Command::Normalize => commands::normalize(c),
        Command::Equiv => commands::equiv(c),
        Command::Selftest { only } => commands::selftest(c, &only),
    };
    match outcome {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
