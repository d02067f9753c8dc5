mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input files.
    Parse(String),
    /// The library rejected the computation.
    Numerical(sspade::Error),
    Io(String),
}

impl From<sspade::Error> for CliError {
    fn from(e: sspade::Error) -> Self {
        CliError::Numerical(e)
    }
}

fn module_of(e: &sspade::Error) -> &'static str {
    use sspade::Error::*;
    match e {
        GridMismatch(..) | DivisionSingularity | NonNormalizable(_) | SingularInitialCondition(_) => "series",
        DegenerateTable { .. } | InsufficientCoefficients { .. } | OrderDeficit(_) => "pade",
        UnmatchableAsymptote(_) | MatchingFailure(_) | Domain { .. } | AmbiguousAsymptote(_) => "rootapprox",
        InconsistentIrrationalFactor(_) | InApproximant { .. } => "corrected",
        TemplateMismatch(_) => "exponents",
        Solver(_) | UnknownBaseline(_) | Parameter(_) => "problems",
        InvalidConstruction(_) => "construction",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(e)) => {
            eprintln!("error [sspade::{}]: {e}", module_of(&e));
            ExitCode::from(2)
        }
    }
}
