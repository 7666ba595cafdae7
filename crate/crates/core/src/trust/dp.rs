use super::{RewardCurve, StateSpace, TrustError, TrustParams, TrustState};

/// Largest horizon [`dp_optimal`] accepts.
pub const DEFAULT_DP_CAP: usize = 500;

/// Recommend/skip decisions for every reachable state and every number of
/// remaining steps.
#[derive(Debug, Clone)]
pub struct OptimalPolicy {
    horizon: usize,
    space: StateSpace,
    // decisions[t] holds one bit per state id with `t` steps remaining.
    decisions: Vec<Vec<u64>>,
}

impl OptimalPolicy {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Decision at 1-based `step` of the horizon. Steps past the horizon and
    /// unreachable states skip.
    pub fn recommends(&self, step: usize, state: TrustState) -> bool {
        if step == 0 || step > self.horizon {
            return false;
        }
        let remaining = self.horizon - step + 1;
        let layer = &self.decisions[remaining];
        match self.space.id(state) {
            Some(id) if id / 64 < layer.len() => layer[id / 64] >> (id % 64) & 1 == 1,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimalSolution {
    /// `values[t]` is the optimal expected reward with `t` steps left from
    /// full trust; `values[0] = 0`.
    pub values: Vec<f64>,
    pub policy: std::sync::Arc<OptimalPolicy>,
}

impl OptimalSolution {
    /// Optimal value for each horizon `1..=n`.
    pub fn curve(&self) -> RewardCurve {
        RewardCurve { values: self.values[1..].to_vec() }
    }
}

pub fn dp_optimal(tp: &TrustParams, n: usize) -> Result<OptimalSolution, TrustError> {
    dp_optimal_with_cap(tp, n, DEFAULT_DP_CAP)
}

/// Backward induction over the trust states. With `t` steps remaining only
/// states with at most `n - t` failures are reachable, so each layer is
/// solved on that prefix of the state ids. Ties go to skipping.
pub fn dp_optimal_with_cap(tp: &TrustParams, n: usize, cap: usize) -> Result<OptimalSolution, TrustError> {
    if n > cap {
        return Err(TrustError::HorizonCap { n, cap });
    }
    let space = StateSpace::new(tp, n);
    let r = tp.r();
    let mut prev = vec![0.0; space.states_with_failures_at_most(n)];
    let mut cur = prev.clone();
    let mut values = vec![0.0];
    let mut decisions = vec![Vec::new()];
    for t in 1..=n {
        let live = space.states_with_failures_at_most(n - t);
        let mut bits = vec![0u64; live.div_ceil(64)];
        for id in 0..live {
            let p = space.probability(id);
            let rec = p * (r + prev[space.success(id)]) + (1.0 - p) * prev[space.fail(id)];
            let skip = prev[space.skip(id)];
            if rec > skip {
                bits[id / 64] |= 1 << (id % 64);
                cur[id] = rec;
            } else {
                cur[id] = skip;
            }
        }
        values.push(cur[0]);
        decisions.push(bits);
        std::mem::swap(&mut prev, &mut cur);
    }
    let policy = OptimalPolicy { horizon: n, space, decisions };
    Ok(OptimalSolution { values, policy: std::sync::Arc::new(policy) })
}
