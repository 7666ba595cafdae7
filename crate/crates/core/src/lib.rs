//! Fair pricing of recommendations as a coalitional game, and the reward
//! dynamics of a recommender whose trust decays with failed recommendations.

pub mod core_lp;
pub mod fair_division;
pub mod game;
pub mod io;
pub mod rational;
pub mod trust;
pub mod verify;
