use std::fmt;
use std::process::ExitCode;

use fairprice_core::core_lp::CoreError;
use fairprice_core::fair_division::DivisionError;
use fairprice_core::game::GameError;
use fairprice_core::io::IoError;
use fairprice_core::trust::TrustError;

#[derive(Debug)]
pub enum CliError {
    /// Bad input or parameters (exit 2).
    Invalid(String),
    /// A size or horizon limit (exit 3).
    Cap(String),
    /// Writing results failed (exit 1).
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Invalid(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Output(_) => 1,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Cap(m) | CliError::Output(m) => f.write_str(m),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::TooManyPlayers { .. } => CliError::Cap(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<DivisionError> for CliError {
    fn from(e: DivisionError) -> Self {
        match e {
            DivisionError::Game(g) | DivisionError::InvalidTruth(g) => g.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Game(g) => g.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Game(g) => g.into(),
            IoError::Division(d) => d.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<TrustError> for CliError {
    fn from(e: TrustError) -> Self {
        match e {
            TrustError::HorizonCap { .. } => CliError::Cap(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}
