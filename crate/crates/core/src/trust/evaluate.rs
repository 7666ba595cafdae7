use super::{psi, Policy, RewardCurve, StateSpace, TrustError, TrustParams};

/// Exact expected cumulative reward of `policy` over `n` steps, by pushing
/// the probability distribution over trust states forward one step at a
/// time.
pub fn evaluate_policy(tp: &TrustParams, policy: &Policy, n: usize) -> RewardCurve {
    let space = StateSpace::new(tp, n);
    let r = tp.r();
    let mut mass = vec![0.0; space.len()];
    let mut next = vec![0.0; space.len()];
    mass[0] = 1.0;
    let mut live = 1;
    let mut total = 0.0;
    let mut values = Vec::with_capacity(n);
    for step in 1..=n {
        next.iter_mut().take(space.states_with_failures_at_most(step)).for_each(|m| *m = 0.0);
        let mut gained = 0.0;
        for id in 0..live {
            let m = mass[id];
            if m == 0.0 {
                continue;
            }
            if policy.recommends(step, n, space.state(id)) {
                let p = space.probability(id);
                gained += m * p;
                next[space.success(id)] += m * p;
                next[space.fail(id)] += m * (1.0 - p);
            } else {
                next[space.skip(id)] += m;
            }
        }
        total += gained * r;
        values.push(total);
        live = space.states_with_failures_at_most(step);
        std::mem::swap(&mut mass, &mut next);
    }
    RewardCurve { values }
}

/// Expected cumulative reward of recommending products `1, k+1, 2k+1, ...`
/// in the complete blocks of `k` steps.
pub fn heuristic_reward(tp: &TrustParams, k: usize, n: usize) -> Result<RewardCurve, TrustError> {
    if k == 0 {
        return Err(TrustError::InvalidParameter { name: "k", value: "0".into(), expected: "k >= 1" });
    }
    Ok(evaluate_policy(tp, &Policy::EveryK(k), n))
}

/// `floor(n / k) * p0 * r` when the spacing `k` exceeds `psi`. With that
/// spacing trust is back at `p0` before every recommendation.
pub fn heuristic_closed_form(tp: &TrustParams, k: usize, n: usize) -> Option<f64> {
    let psi = psi(tp.l_exact(), tp.g_exact()).ok()?;
    (k > psi as usize).then(|| (n / k) as f64 * tp.p0() * tp.r())
}
