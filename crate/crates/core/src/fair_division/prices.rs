use num_traits::Zero;

use super::DivisionError;
use crate::game::{Game, PayoffVector};
use crate::rational::{exact_string, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaymentMode {
    /// Paid for every recommendation made.
    PerRecommendation,
    /// Paid only when the recommendation leads to a sale.
    PerSale,
}

impl PaymentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PaymentMode::PerRecommendation => "per-recommendation",
            PaymentMode::PerSale => "per-sale",
        }
    }
}

impl std::str::FromStr for PaymentMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-recommendation" | "per_recommendation" => Ok(PaymentMode::PerRecommendation),
            "per-sale" | "per_sale" => Ok(PaymentMode::PerSale),
            other => Err(format!("unknown payment mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceSchedule {
    pub mode: PaymentMode,
    pub price: Vec<(String, Rational)>,
}

/// Recommender prices for a feasible payoff vector. Per-sale prices divide
/// the expected payoff by the sale probability `p + f(N)`.
pub fn to_prices(x: &PayoffVector, game: &Game, mode: PaymentMode) -> Result<PriceSchedule, DivisionError> {
    let values = x.aligned(game).ok_or(DivisionError::PayoffMismatch)?;
    if x.total() != *game.grand_worth() {
        return Err(DivisionError::InfeasiblePayoff {
            total: exact_string(&x.total()),
            grand: exact_string(game.grand_worth()),
        });
    }
    let divisor = match mode {
        PaymentMode::PerRecommendation => None,
        PaymentMode::PerSale => {
            let prob = game.grand_success_probability().ok_or(DivisionError::UnknownSaleProbability)?;
            if prob.is_zero() {
                return Err(DivisionError::ZeroSaleProbability);
            }
            Some(prob)
        }
    };
    let price = values
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| {
            let p = match &divisor {
                Some(d) => v / d,
                None => v,
            };
            (game.roster().id(i).to_string(), p)
        })
        .collect();
    Ok(PriceSchedule { mode, price })
}
