use num_traits::{One, Zero};

use super::{nash_bargaining_for_game, shapley, DivisionError};
use crate::game::{Game, Roster, Scenario};
use crate::rational::Rational;

/// Maps the game built from a seller's report to recommender payments, in
/// roster order (seller excluded).
pub trait PricingRule {
    fn name(&self) -> &str;
    fn payments(&self, reported: &Game) -> Result<Vec<Rational>, DivisionError>;
}

/// Pays each recommender its Shapley value.
pub struct ShapleyPricing;

/// Pays each recommender its Nash bargaining payoff.
pub struct NashPricing;

/// Pays nothing.
pub struct ZeroPricing;

impl PricingRule for ShapleyPricing {
    fn name(&self) -> &str {
        "shapley"
    }

    fn payments(&self, reported: &Game) -> Result<Vec<Rational>, DivisionError> {
        Ok(shapley(reported)?.values().skip(1).cloned().collect())
    }
}

impl PricingRule for NashPricing {
    fn name(&self) -> &str {
        "nash"
    }

    fn payments(&self, reported: &Game) -> Result<Vec<Rational>, DivisionError> {
        Ok(nash_bargaining_for_game(reported)?.values().skip(1).cloned().collect())
    }
}

impl PricingRule for ZeroPricing {
    fn name(&self) -> &str {
        "zero"
    }

    fn payments(&self, reported: &Game) -> Result<Vec<Rational>, DivisionError> {
        Ok(vec![Rational::zero(); reported.player_count() - 1])
    }
}

/// A seller report: probability `p'`, increments scaled by `f_scale`, and
/// margin `delta'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub p: Rational,
    pub f_scale: Rational,
    pub delta: Rational,
}

/// Finite set of reports: the product of the three axes, visited with `p`
/// outermost and `delta` innermost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportGrid {
    pub p: Vec<Rational>,
    pub f_scale: Vec<Rational>,
    pub delta: Vec<Rational>,
}

impl ReportGrid {
    /// Grid over the given axes with `delta' = 0` added when missing.
    pub fn new(p: Vec<Rational>, f_scale: Vec<Rational>, mut delta: Vec<Rational>) -> Self {
        if !delta.iter().any(Zero::is_zero) {
            delta.insert(0, Rational::zero());
        }
        ReportGrid { p, f_scale, delta }
    }

    /// A small default grid around the truthful report: `p'` in
    /// `{0, p/2, p}`, scales in `{0, 1/2, 1}`, margins in `{0, delta/2, delta}`.
    pub fn around(truth: &Scenario) -> Self {
        let half = Rational::new(1.into(), 2.into());
        let axis = |x: &Rational| {
            let mut v = vec![Rational::zero(), x * &half, x.clone()];
            v.dedup();
            v
        };
        ReportGrid::new(axis(truth.p()), axis(&Rational::one()), axis(truth.delta()))
    }

    pub fn len(&self) -> usize {
        self.p.len() * self.f_scale.len() * self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn reports(&self) -> impl Iterator<Item = Report> + '_ {
        self.p.iter().flat_map(move |p| {
            self.f_scale.iter().flat_map(move |f| {
                self.delta.iter().map(move |d| Report { p: p.clone(), f_scale: f.clone(), delta: d.clone() })
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub report: Report,
    pub truthful_utility: Rational,
    pub deviating_utility: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ProbeOutcome {
    /// The most profitable misreport found; the first in grid order on ties.
    Found(Deviation),
    NoneFound {
        reports_checked: usize,
    },
}

/// Seller's true utility `(p + f(N)) delta - sum of payments`, where the
/// payments are computed from the reported game.
pub fn seller_utility(truth: &Game, payments: &[Rational]) -> Rational {
    payments.iter().fold(truth.grand_worth().clone(), |acc, x| acc - x)
}

/// Searches `grid` for a report that strictly raises the seller's true
/// utility over truthful reporting under `rule`. Reports that do not form a
/// valid scenario are skipped.
pub fn truthfulness_probe(
    truth: &Scenario,
    roster: &Roster,
    rule: &dyn PricingRule,
    grid: &ReportGrid,
) -> Result<ProbeOutcome, DivisionError> {
    if grid.is_empty() {
        return Err(DivisionError::EmptyGrid);
    }
    let true_game = truth.build(roster).map_err(DivisionError::InvalidTruth)?;
    let truthful_utility = seller_utility(&true_game, &rule.payments(&true_game)?);

    let mut best: Option<Deviation> = None;
    let mut checked = 0;
    for report in grid.reports() {
        let reported = truth.with_report(report.p.clone(), report.delta.clone(), &report.f_scale);
        let Ok(reported_game) = reported.build(roster) else {
            continue;
        };
        checked += 1;
        let utility = seller_utility(&true_game, &rule.payments(&reported_game)?);
        let improves = utility > truthful_utility && best.as_ref().is_none_or(|b| utility > b.deviating_utility);
        if improves {
            best = Some(Deviation { report, truthful_utility: truthful_utility.clone(), deviating_utility: utility });
        }
    }
    Ok(match best {
        Some(d) => ProbeOutcome::Found(d),
        None => ProbeOutcome::NoneFound { reports_checked: checked },
    })
}
