//! Strategic recommending under trust decay.
//!
//! The recommendee buys a recommended product with probability `p`. A failed
//! recommendation multiplies `p` by the loss rate `l`; a skipped product lets
//! `p` recover to `min(g p, p0)`; with `reset`, a success restores `p0`.

mod dilog;
mod dp;
mod evaluate;
mod mc;
mod series;
mod state;

pub use dilog::{dilog, dilog_series};
pub use dp::{dp_optimal, dp_optimal_with_cap, OptimalPolicy, OptimalSolution, DEFAULT_DP_CAP};
pub use evaluate::{evaluate_policy, heuristic_closed_form, heuristic_reward};
pub use mc::{mc_simulate, McResult, MC_CHUNK};
pub use series::{
    closed_form_no_reset, exact_series_no_reset, failure_probability_q, q_lower_bound, reward_upper_bound,
    with_reset_total, Truncated, DEFAULT_TOL,
};
pub use state::{StateSpace, TrustState};

use num_traits::{One, Signed};
use thiserror::Error;

use crate::rational::{rational_from_f64, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrustError {
    #[error("{name} = {value} is out of range: expected {expected}")]
    InvalidParameter { name: &'static str, value: String, expected: &'static str },
    #[error("{0}")]
    WrongRegime(&'static str),
    #[error("no finite psi: l * g^k stays below 1 when g <= 1")]
    NoFinitePsi,
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("horizon n = {n} exceeds the dynamic-programming cap of {cap}")]
    HorizonCap { n: usize, cap: usize },
    #[error("dilog is defined on [0, 1], got {0}")]
    DilogDomain(f64),
    #[error("lower bound delta(c) is zero for c = {0}")]
    DegenerateBound(f64),
    #[error("failure probability q evaluated to zero")]
    ZeroFailureProbability,
}

/// Parameters of the trust process. Kept both exactly (for the recovery
/// clamp comparisons) and as floats (for probabilities and rewards).
#[derive(Debug, Clone, PartialEq)]
pub struct TrustParams {
    p0: Rational,
    l: Rational,
    g: Rational,
    r: Rational,
    reset: bool,
}

impl TrustParams {
    /// Floats are read through their shortest decimal form, so `0.66` is
    /// exactly `66/100`.
    pub fn new(p0: f64, l: f64, g: f64, r: f64, reset: bool) -> Result<Self, TrustError> {
        let conv = |name: &'static str, x: f64| {
            rational_from_f64(x).ok_or(TrustError::InvalidParameter {
                name,
                value: format!("{x}"),
                expected: "a finite number",
            })
        };
        TrustParams::exact(conv("p0", p0)?, conv("l", l)?, conv("g", g)?, conv("r", r)?, reset)
    }

    /// Requires `0 < p0 < 1`, `0 <= l < 1`, `g >= 1` and `r > 0`. A loss rate
    /// of exactly 0 is accepted as the limit where one failure ends all
    /// future sales.
    pub fn exact(p0: Rational, l: Rational, g: Rational, r: Rational, reset: bool) -> Result<Self, TrustError> {
        let bad = |name, value: &Rational, expected| TrustError::InvalidParameter {
            name,
            value: crate::rational::exact_string(value),
            expected,
        };
        if !p0.is_positive() || p0 >= Rational::one() {
            return Err(bad("p0", &p0, "0 < p0 < 1"));
        }
        if l.is_negative() || l >= Rational::one() {
            return Err(bad("l", &l, "0 <= l < 1"));
        }
        if g < Rational::one() {
            return Err(bad("g", &g, "g >= 1"));
        }
        if !r.is_positive() {
            return Err(bad("r", &r, "r > 0"));
        }
        Ok(TrustParams { p0, l, g, r, reset })
    }

    pub fn p0(&self) -> f64 {
        to_f64(&self.p0)
    }

    pub fn l(&self) -> f64 {
        to_f64(&self.l)
    }

    pub fn g(&self) -> f64 {
        to_f64(&self.g)
    }

    pub fn r(&self) -> f64 {
        to_f64(&self.r)
    }

    pub fn reset(&self) -> bool {
        self.reset
    }

    pub fn l_exact(&self) -> &Rational {
        &self.l
    }

    pub fn g_exact(&self) -> &Rational {
        &self.g
    }

    pub fn has_recovery(&self) -> bool {
        self.g > Rational::one()
    }

    pub fn with_reset(&self, reset: bool) -> Self {
        TrustParams { reset, ..self.clone() }
    }

    /// Same process with the loss rate replaced.
    pub fn with_loss(&self, l: Rational) -> Result<Self, TrustError> {
        TrustParams::exact(self.p0.clone(), l, self.g.clone(), self.r.clone(), self.reset)
    }

    /// Same process without recovery.
    pub fn without_recovery(&self) -> Self {
        TrustParams { g: Rational::one(), ..self.clone() }
    }
}

/// Smallest integer `psi` with `l * g^psi >= 1`, compared exactly.
pub fn psi(l: &Rational, g: &Rational) -> Result<u32, TrustError> {
    if !l.is_positive() || *l >= Rational::one() {
        return Err(TrustError::InvalidParameter {
            name: "l",
            value: crate::rational::exact_string(l),
            expected: "0 < l < 1",
        });
    }
    if *g <= Rational::one() {
        return Err(TrustError::NoFinitePsi);
    }
    let mut value = l.clone();
    let mut k = 0u32;
    while value < Rational::one() {
        value *= g;
        k += 1;
    }
    Ok(k)
}

/// A per-step recommend/skip rule.
#[derive(Debug, Clone)]
pub enum Policy {
    /// Recommend every product.
    All,
    /// Recommend products `1, k+1, 2k+1, ...`, skipping a trailing block
    /// shorter than `k`, so exactly `floor(n / k)` recommendations.
    EveryK(usize),
    /// Decision table from [`dp_optimal`].
    Optimal(std::sync::Arc<OptimalPolicy>),
}

impl Policy {
    pub fn name(&self) -> String {
        match self {
            Policy::All => "all".into(),
            Policy::EveryK(k) => format!("every-k:{k}"),
            Policy::Optimal(_) => "optimal".into(),
        }
    }

    /// Whether to recommend at 1-based `step` of an `n`-step run in `state`.
    pub fn recommends(&self, step: usize, n: usize, state: TrustState) -> bool {
        match self {
            Policy::All => true,
            Policy::EveryK(k) => {
                let k = (*k).max(1);
                (step - 1).is_multiple_of(k) && step <= n / k * k
            }
            Policy::Optimal(table) => table.recommends(step, state),
        }
    }
}

/// Expected cumulative reward after each step; `values[t - 1]` is the value
/// after step `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardCurve {
    pub values: Vec<f64>,
}

impl RewardCurve {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value after `step` steps (0 before the first step).
    pub fn at(&self, step: usize) -> f64 {
        if step == 0 {
            0.0
        } else {
            self.values[step - 1]
        }
    }

    pub fn final_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, *v))
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<(), TrustError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(TrustError::NonPositiveTolerance(tol))
    }
}
