use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::DivisionError;
use crate::game::{Coalition, Game, PayoffVector};
use crate::rational::{exact_string, Rational};

/// Split `feasible_total` among players whose payoffs must be nonnegative,
/// relative to the disagreement payoffs `disagreement`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BargainingProblem {
    pub feasible_total: Rational,
    pub disagreement: PayoffVector,
}

impl BargainingProblem {
    /// Disagreement point `(v({s}), 0, ..., 0)` and total `v(N)`.
    pub fn from_game(game: &Game) -> Self {
        let values = (0..game.player_count())
            .map(|i| game.worth(Coalition::singleton(i)).cloned().unwrap_or_else(|_| Rational::zero()))
            .collect();
        BargainingProblem {
            feasible_total: game.grand_worth().clone(),
            disagreement: PayoffVector::for_game(game, values),
        }
    }

    /// `prod_i (x_i - d_i)`, the objective the solution maximizes.
    pub fn nash_product(&self, x: &[Rational]) -> Rational {
        self.disagreement.values().zip(x).fold(Rational::from_integer(BigInt::from(1)), |acc, (d, xi)| acc * (xi - d))
    }
}

/// Maximizer of the Nash product over `{x >= 0 : sum x = feasible_total}`.
///
/// The product is maximized by giving every player its disagreement payoff
/// plus an equal share of the surplus. That point is returned exactly; if it
/// falls outside the nonnegative simplex the problem is reported rather than
/// clamped.
pub fn nash_bargaining(bp: &BargainingProblem) -> Result<PayoffVector, DivisionError> {
    let players = bp.disagreement.len();
    if players == 0 {
        return Err(DivisionError::DisagreementSize { players, entries: 0 });
    }
    let d_total = bp.disagreement.total();
    if d_total > bp.feasible_total {
        return Err(DivisionError::InfeasibleDisagreement {
            disagreement: exact_string(&d_total),
            total: exact_string(&bp.feasible_total),
        });
    }
    let share = (&bp.feasible_total - d_total) / Rational::from_integer(BigInt::from(players));
    let entries: Vec<(String, Rational)> =
        bp.disagreement.entries().iter().map(|(id, d)| (id.clone(), d + &share)).collect();
    if let Some((id, v)) = entries.iter().find(|(_, v)| v.is_negative()) {
        return Err(DivisionError::OutsideFeasibleSet { player: id.clone(), value: exact_string(v) });
    }
    Ok(PayoffVector::new(entries))
}

/// Nash bargaining on the game's own disagreement point.
pub fn nash_bargaining_for_game(game: &Game) -> Result<PayoffVector, DivisionError> {
    nash_bargaining(&BargainingProblem::from_game(game))
}
