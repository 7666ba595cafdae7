//! Reading specification files and writing result documents.

mod prices;
mod rewards;
mod spec;

pub use prices::{price_report_csv, price_report_json, MethodResult};
pub use rewards::{read_reward_csv, reward_rows, write_reward_csv, RewardRow, REWARD_HEADER, REWARD_HEADER_MC};
pub use spec::{parse_game, parse_spec, Spec};

use thiserror::Error;

use crate::fair_division::DivisionError;
use crate::game::GameError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Game(GameError),
    #[error(transparent)]
    Division(DivisionError),
    #[error("CSV line {line}: {message}")]
    Csv { line: usize, message: String },
}
