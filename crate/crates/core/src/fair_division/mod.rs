//! Payoff division rules: Shapley value, anonymity-proof Shapley value over
//! arguments, Nash bargaining, plus price schedules and a seller
//! truthfulness probe.

mod arguments;
mod nash;
mod prices;
mod shapley;
mod truthfulness;

pub use arguments::{anonymity_proof_shapley, shapley_arguments, AnonymityProofShares, ArgumentGame};
pub use nash::{nash_bargaining, nash_bargaining_for_game, BargainingProblem};
pub use prices::{to_prices, PaymentMode, PriceSchedule};
pub use shapley::{shapley, shapley_from_table};
pub use truthfulness::{
    seller_utility, truthfulness_probe, Deviation, NashPricing, PricingRule, ProbeOutcome, Report, ReportGrid,
    ShapleyPricing, ZeroPricing,
};

use thiserror::Error;

use crate::game::GameError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("no arguments are declared")]
    EmptyDeclaredSet,
    #[error("argument `{0}` is owned by more than one recommender")]
    OverlappingOwnership(String),
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(String),
    #[error("worth of {coalition} is {value}; {reason}")]
    InvalidArgumentWorth { coalition: String, value: String, reason: &'static str },
    #[error("declared arguments have zero total Shapley value but worth {0}")]
    DegenerateShapleyDenominator(String),
    #[error("disagreement payoffs sum to {disagreement}, above the feasible total {total}")]
    InfeasibleDisagreement { disagreement: String, total: String },
    #[error("bargaining problem has {players} players but {entries} disagreement entries")]
    DisagreementSize { players: usize, entries: usize },
    #[error("equal-surplus point gives player `{player}` payoff {value}, outside the feasible set")]
    OutsideFeasibleSet { player: String, value: String },
    #[error("payoff vector does not match the game's players")]
    PayoffMismatch,
    #[error("payoff vector is not feasible: total {total}, v(N) = {grand}")]
    InfeasiblePayoff { total: String, grand: String },
    #[error("per-sale prices need the sale probability p + f(N), which this game does not record")]
    UnknownSaleProbability,
    #[error("per-sale prices are undefined when p + f(N) = 0")]
    ZeroSaleProbability,
    #[error("report grid is empty")]
    EmptyGrid,
    #[error("truthful report is itself invalid: {0}")]
    InvalidTruth(GameError),
}
