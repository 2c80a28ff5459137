use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use coverdepth_cli::source::{CodeSpec, Family, Params};
use coverdepth_cli::sweep;

#[derive(Parser, Debug)]
#[command(
    name = "coverdepth",
    version,
    about = "Expected coverage depth of linear codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the expected number of column draws with one method.
    Expect {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "exact")]
        method: String,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Weight distribution, its MacWilliams dual and extension-code distributions.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        /// Include the extended weight enumerator.
        #[arg(long)]
        extended: bool,
        /// Extension degrees to evaluate (implies --extended).
        #[arg(long, value_delimiter = ',')]
        m: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run every applicable method and cross-check them.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Tabulate expectations and the MDS bound over a parameter sweep.
    Table {
        /// e.g. "simplex:q=2:k=2..5; hamming:q=2,3:r=2..3"
        #[arg(long)]
        sweep: String,
        #[arg(long, default_value = "closed-form")]
        method: String,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Path to a `.code` file.
    #[arg(long, value_name = "PATH")]
    code: Option<PathBuf>,
}

impl CodeArgs {
    fn spec(&self) -> Result<CodeSpec, String> {
        let family = match (&self.family, &self.code) {
            (Some(f), _) => f.parse::<Family>()?,
            (None, Some(_)) => Family::File,
            (None, None) => return Err("give --family or --code".into()),
        };
        let params = Params {
            q: self.q,
            k: self.k,
            r: self.r,
            s: self.s,
            n: self.n,
        };
        CodeSpec::new(family, params, self.code.clone())
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct SimArgs {
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Human,
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("COVERDEPTH_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("COVERDEPTH_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<commands::Outcome, String> {
    configure_threads()?;
    match cli.command {
        Command::Expect {
            code,
            method,
            sim,
            format,
        } => commands::expect(&code.spec()?, &method, sim.into(), format),
        Command::Weights {
            code,
            extended,
            m,
            format,
        } => commands::weights(&code.spec()?, extended, &m, format),
        Command::Verify { code, sim, format } => {
            commands::verify(&code.spec()?, sim.into(), format)
        }
        Command::Table {
            sweep,
            method,
            sim,
            format,
        } => commands::table(&sweep::parse_sweep(&sweep)?, &method, sim.into(), format),
    }
}

impl From<SimArgs> for coverdepth::coverage::SimulationConfig {
    fn from(a: SimArgs) -> Self {
        Self {
            trials: a.trials,
            seed: a.seed,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
