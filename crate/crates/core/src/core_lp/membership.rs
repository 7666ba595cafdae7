use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::simplex::{lp_feasible, Feasibility, LinearSystem, Relation};
use super::CoreError;
use crate::game::{check_player_count, Coalition, Game, PayoffVector};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreViolation {
    /// Payoffs do not add up to `v(N)`.
    Infeasible { total: Rational, grand_worth: Rational },
    /// `coalition` can secure more on its own than it is paid.
    Blocking { coalition: Coalition, worth: Rational, payoff: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreCheck {
    pub in_core: bool,
    pub violation: Option<CoreViolation>,
}

/// `Sum_{i in S} x_i` for every coalition bitmask `S`.
fn coalition_sums(x: &[Rational]) -> Vec<Rational> {
    let mut sums = vec![Rational::zero(); 1 << x.len()];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = &sums[mask & (mask - 1)] + &x[low];
    }
    sums
}

/// Whether `x` is feasible and unblocked. On failure the witness is the
/// lexicographically smallest blocking coalition.
pub fn core_contains(game: &Game, x: &PayoffVector) -> Result<CoreCheck, CoreError> {
    let values = x.aligned(game).ok_or(CoreError::PayoffMismatch)?;
    let total = x.total();
    if total != *game.grand_worth() {
        return Ok(CoreCheck {
            in_core: false,
            violation: Some(CoreViolation::Infeasible { total, grand_worth: game.grand_worth().clone() }),
        });
    }
    let sums = coalition_sums(&values);
    let table = game.worth_table();
    let witness = (1..table.len())
        .map(|m| Coalition(m as u32))
        .filter(|c| table[c.index()] > sums[c.index()])
        .min_by(|a, b| a.lex_cmp(*b));
    Ok(match witness {
        None => CoreCheck { in_core: true, violation: None },
        Some(c) => CoreCheck {
            in_core: false,
            violation: Some(CoreViolation::Blocking {
                coalition: c,
                worth: table[c.index()].clone(),
                payoff: sums[c.index()].clone(),
            }),
        },
    })
}

/// The Core as a linear system: row 0 is `sum x = v(N)`, followed by one
/// `sum_{i in S} x_i >= v(S)` row per proper non-empty coalition, in bitmask
/// order. The returned coalitions label the rows.
pub fn core_system(game: &Game) -> (LinearSystem, Vec<Coalition>) {
    let grand = game.grand_coalition();
    let rows: Vec<Coalition> = std::iter::once(grand).chain((1..grand.0).map(Coalition)).collect();
    (restricted_system(game, &rows), rows)
}

fn restricted_system(game: &Game, rows: &[Coalition]) -> LinearSystem {
    let n = game.player_count();
    let ids = (0..n).map(|i| game.roster().id(i).to_string()).collect();
    let mut sys = LinearSystem::new(ids);
    let grand = game.grand_coalition();
    for c in rows {
        let terms: Vec<(usize, Rational)> = c.members().map(|i| (i, Rational::one())).collect();
        let relation = if *c == grand { Relation::Eq } else { Relation::Ge };
        sys.add(&terms, relation, game.worth_table()[c.index()].clone())
            .expect("coalition members are valid variable indices");
    }
    sys
}

/// Nonnegative weights on proper coalitions, plus a free weight on the grand
/// coalition, such that every player's weights sum to zero while the
/// weighted worths sum to a positive number. No payoff vector can then
/// satisfy all Core constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreCertificate {
    pub multipliers: Vec<(Coalition, Rational)>,
}

impl CoreCertificate {
    pub fn verify(&self, game: &Game) -> bool {
        let grand = game.grand_coalition();
        let n = game.player_count();
        let signs_ok = self
            .multipliers
            .iter()
            .all(|(c, y)| c.is_subset_of(grand) && !c.is_empty() && (*c == grand || !y.is_negative()));
        let cancels = (0..n).all(|i| {
            self.multipliers
                .iter()
                .filter(|(c, _)| c.contains(i))
                .fold(Rational::zero(), |acc, (_, y)| acc + y)
                .is_zero()
        });
        let gap =
            self.multipliers.iter().fold(Rational::zero(), |acc, (c, y)| acc + y * &game.worth_table()[c.index()]);
        signs_ok && cancels && gap.is_positive()
    }

    /// Rescales the certificate into a balanced collection whose weighted
    /// worth exceeds `v(N)`.
    pub fn balanced_weights(&self, game: &Game) -> Option<BalancedWeights> {
        let grand = game.grand_coalition();
        let scale = -self.multipliers.iter().filter(|(c, _)| *c == grand).fold(Rational::zero(), |acc, (_, y)| acc + y);
        if !scale.is_positive() {
            return None;
        }
        let weights = self
            .multipliers
            .iter()
            .filter(|(c, y)| *c != grand && !y.is_zero())
            .map(|(c, y)| (*c, y / &scale))
            .collect();
        Some(BalancedWeights { weights })
    }
}

/// Weights `lambda_S` in `[0, 1]` with `sum_{S containing i} lambda_S = 1` for
/// every player `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedWeights {
    pub weights: Vec<(Coalition, Rational)>,
}

impl BalancedWeights {
    pub fn is_balanced(&self, n: usize) -> bool {
        let in_range = self.weights.iter().all(|(_, w)| !w.is_negative() && *w <= Rational::one());
        in_range
            && (0..n).all(|i| {
                self.weights
                    .iter()
                    .filter(|(c, _)| c.contains(i))
                    .fold(Rational::zero(), |acc, (_, w)| acc + w)
                    .is_one()
            })
    }

    /// `sum_S lambda_S v(S)`.
    pub fn weighted_worth(&self, game: &Game) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, (c, w)| acc + w * &game.worth_table()[c.index()])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreNonEmptiness {
    NonEmpty { point: PayoffVector },
    Empty { certificate: CoreCertificate },
}

impl CoreNonEmptiness {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, CoreNonEmptiness::NonEmpty { .. })
    }
}

/// Decides whether the Core is non-empty.
///
/// Solves the Core system by constraint generation: start from the
/// efficiency row and the singleton rows, solve exactly, then add the most
/// violated coalition row (lexicographically smallest on ties) until the
/// point satisfies every coalition or the restricted system is infeasible.
/// A Farkas certificate of a restricted system is also a certificate for the
/// full one.
pub fn core_is_nonempty(game: &Game) -> Result<CoreNonEmptiness, CoreError> {
    let n = game.player_count();
    check_player_count(n)?;
    let grand = game.grand_coalition();
    let table = game.worth_table();
    let mut rows: Vec<Coalition> = std::iter::once(grand).chain((0..n).map(Coalition::singleton)).collect();

    loop {
        let sys = restricted_system(game, &rows);
        match lp_feasible(&sys) {
            Feasibility::Infeasible(cert) => {
                let multipliers =
                    rows.iter().zip(cert.multipliers).filter(|(_, y)| !y.is_zero()).map(|(c, y)| (*c, y)).collect();
                return Ok(CoreNonEmptiness::Empty { certificate: CoreCertificate { multipliers } });
            }
            Feasibility::Feasible(x) => {
                let sums = coalition_sums(&x);
                let most_violated = (1..grand.0)
                    .map(Coalition)
                    .filter_map(|c| {
                        let gap = &table[c.index()] - &sums[c.index()];
                        gap.is_positive().then_some((c, gap))
                    })
                    .max_by(|(a, ga), (b, gb)| match ga.cmp(gb) {
                        Ordering::Equal => b.lex_cmp(*a),
                        o => o,
                    });
                match most_violated {
                    None => return Ok(CoreNonEmptiness::NonEmpty { point: PayoffVector::for_game(game, x) }),
                    Some((c, _)) => rows.push(c),
                }
            }
        }
    }
}
