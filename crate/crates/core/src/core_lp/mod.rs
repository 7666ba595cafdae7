//! Core membership and Core non-emptiness, decided exactly.

mod membership;
mod simplex;

pub use membership::{
    core_contains, core_is_nonempty, core_system, BalancedWeights, CoreCertificate, CoreCheck, CoreNonEmptiness,
    CoreViolation,
};
pub use simplex::{lp_feasible, Constraint, FarkasCertificate, Feasibility, LinearSystem, Relation};

use thiserror::Error;

use crate::game::GameError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint refers to unknown variable index {0}")]
    UnknownVariable(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("payoff vector does not match the game's players")]
    PayoffMismatch,
}
