//! `polarwt`: command-line harness for polar wiretap code experiments
//! over degraded binary erasure channel pairs.

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod spec;

use spec::{CommonArgs, ExperimentSpec};

#[derive(Parser)]
#[command(
    name = "polarwt",
    about = "Polar wiretap codes over erasure channels: construction, \
             roundtrip, reliability and equivocation experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Summarize an index-set construction; optionally write a config file
    Construct(CommonArgs),
    /// Encode, transmit and decode a single message, printing the trace
    Roundtrip {
        #[command(flatten)]
        args: CommonArgs,
        /// Message as hex digits (4 bits per digit, MSB first); random if omitted
        #[arg(long = "message-hex")]
        message_hex: Option<String>,
    },
    /// Block-error-rate sweep: CSV rows rate,p_hat,bound,trials
    Reliability(CommonArgs),
    /// Equivocation sweep: CSV rows rate,re_mean,leak_mean,re_stderr,trials
    Equivocation(CommonArgs),
}

#[derive(Debug)]
pub enum CliError {
    Core(polarwt::Error),
    Annotated(String, polarwt::Error),
    Validation(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Annotated(ctx, e) => write!(f, "{ctx}: {e}"),
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<polarwt::Error> for CliError {
    fn from(e: polarwt::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    /// 2 for validation problems, 3 for capacity/limit problems, 1 otherwise.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::Annotated(_, e) => {
                if e.is_capacity() {
                    3
                } else {
                    2
                }
            }
            CliError::Validation(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Construct(args) => commands::cmd_construct(&ExperimentSpec::resolve(&args)?),
        Cmd::Roundtrip { args, message_hex } => {
            commands::cmd_roundtrip(&ExperimentSpec::resolve(&args)?, message_hex.as_deref())
        }
        Cmd::Reliability(args) => commands::cmd_reliability(&ExperimentSpec::resolve(&args)?),
        Cmd::Equivocation(args) => commands::cmd_equivocation(&ExperimentSpec::resolve(&args)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
