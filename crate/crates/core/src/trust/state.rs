use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::TrustParams;

/// Trust level `p = p0 * l^a * g^b` as exponent counts: `a` failures since
/// trust was last full, `b` recovery steps since then.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrustState {
    pub a: u32,
    pub b: u32,
}

impl TrustState {
    /// `p = p0`.
    pub const FULL: TrustState = TrustState { a: 0, b: 0 };
}

/// Every trust state reachable within a horizon, indexed densely, with the
/// three transitions precomputed.
///
/// States are grouped by `a`; for each `a` only the `b` values with
/// `l^a g^b < 1` exist, since reaching `l^a g^b >= 1` clamps back to
/// [`TrustState::FULL`]. The clamp thresholds are found with exact rational
/// powers. Without recovery (`g = 1`) `b` stays 0.
#[derive(Debug, Clone)]
pub struct StateSpace {
    reset: bool,
    offset: Vec<usize>,
    a_of: Vec<u32>,
    b_of: Vec<u32>,
    prob: Vec<f64>,
    skip_to: Vec<usize>,
    fail_to: Vec<usize>,
}

/// Decides `l^a g^b >= 1`. Logarithms settle all but near-ties, which are
/// compared exactly in integers.
struct PowerCompare {
    l: (BigInt, BigInt),
    g: (BigInt, BigInt),
    ln_l: f64,
    ln_g: f64,
}

impl PowerCompare {
    fn new(tp: &TrustParams) -> Self {
        let (l, g) = (tp.l_exact(), tp.g_exact());
        PowerCompare {
            l: (l.numer().clone(), l.denom().clone()),
            g: (g.numer().clone(), g.denom().clone()),
            ln_l: tp.l().ln(),
            ln_g: tp.g().ln(),
        }
    }

    fn at_least_one(&self, a: usize, b: usize) -> bool {
        if a == 0 {
            return true;
        }
        if self.l.0.is_zero() {
            return false;
        }
        let x = a as f64 * self.ln_l + b as f64 * self.ln_g;
        let scale = a as f64 * self.ln_l.abs() + b as f64 * self.ln_g.abs();
        if x.abs() > 1e-9 * scale.max(1.0) {
            return x.is_positive();
        }
        let lhs = num_traits::pow(self.l.0.clone(), a) * num_traits::pow(self.g.0.clone(), b);
        let rhs = num_traits::pow(self.l.1.clone(), a) * num_traits::pow(self.g.1.clone(), b);
        lhs >= rhs
    }
}

/// `clamp_at[a]`, the smallest `b <= h + 1` with `l^a g^b >= 1` if any, and
/// the number of states with `a` failures.
fn layout(tp: &TrustParams, h: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    if !tp.has_recovery() {
        let clamp_at = (0..=h).map(|a| (a == 0).then_some(0)).collect();
        return (clamp_at, vec![1; h + 1]);
    }
    let cmp = PowerCompare::new(tp);
    let mut clamp_at = Vec::with_capacity(h + 1);
    let mut b = 0usize;
    for a in 0..=h {
        while b <= h && !cmp.at_least_one(a, b) {
            b += 1;
        }
        clamp_at.push(cmp.at_least_one(a, b).then_some(b));
    }
    let counts = clamp_at.iter().map(|c| c.unwrap_or(h + 1).clamp(1, h + 1)).collect();
    (clamp_at, counts)
}

impl StateSpace {
    /// Number of states [`StateSpace::new`] would allocate.
    pub fn size(tp: &TrustParams, horizon: usize) -> usize {
        layout(tp, horizon).1.iter().sum()
    }

    /// States with at most `horizon` failures and `horizon` recovery steps.
    pub fn new(tp: &TrustParams, horizon: usize) -> Self {
        let h = horizon;
        let recovery = tp.has_recovery();
        let (clamp_at, counts) = layout(tp, h);
        let count = |a: usize| counts[a];

        let mut offset = Vec::with_capacity(h + 2);
        offset.push(0);
        for a in 0..=h {
            offset.push(offset[a] + count(a));
        }
        let total = offset[h + 1];
        let (p0, l, g) = (tp.p0(), tp.l(), tp.g());
        let mut space = StateSpace {
            reset: tp.reset(),
            offset,
            a_of: Vec::with_capacity(total),
            b_of: Vec::with_capacity(total),
            prob: Vec::with_capacity(total),
            skip_to: Vec::with_capacity(total),
            fail_to: Vec::with_capacity(total),
        };
        #[allow(clippy::needless_range_loop)]
        for a in 0..=h {
            for b in 0..count(a) {
                let id = space.offset[a] + b;
                space.a_of.push(a as u32);
                space.b_of.push(b as u32);
                space.prob.push((p0 * l.powi(a as i32) * g.powi(b as i32)).min(p0));
                let skip = if !recovery {
                    id
                } else if clamp_at[a].is_some_and(|c| b + 1 >= c) {
                    0
                } else if b + 1 < count(a) {
                    id + 1
                } else {
                    id
                };
                space.skip_to.push(skip);
                space.fail_to.push(if a < h { space.offset[a + 1] + b.min(count(a + 1) - 1) } else { id });
            }
        }
        space
    }

    pub fn len(&self) -> usize {
        self.prob.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }

    /// Number of states with at most `a` failures; these are ids `0..n`.
    pub fn states_with_failures_at_most(&self, a: usize) -> usize {
        self.offset[(a + 1).min(self.offset.len() - 1)]
    }

    pub fn id(&self, s: TrustState) -> Option<usize> {
        let a = s.a as usize;
        if a + 1 >= self.offset.len() {
            return None;
        }
        let id = self.offset[a] + s.b as usize;
        (id < self.offset[a + 1]).then_some(id)
    }

    pub fn state(&self, id: usize) -> TrustState {
        TrustState { a: self.a_of[id], b: self.b_of[id] }
    }

    pub fn probability(&self, id: usize) -> f64 {
        self.prob[id]
    }

    pub fn skip(&self, id: usize) -> usize {
        self.skip_to[id]
    }

    pub fn fail(&self, id: usize) -> usize {
        self.fail_to[id]
    }

    pub fn success(&self, id: usize) -> usize {
        if self.reset {
            0
        } else {
            id
        }
    }

    pub fn failures(&self, id: usize) -> usize {
        self.a_of[id] as usize
    }
}
