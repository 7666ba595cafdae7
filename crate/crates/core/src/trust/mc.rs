use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Policy, RewardCurve, StateSpace, TrustError, TrustParams};

/// Trials per parallel work unit. Partial sums are combined in chunk order,
/// so results do not depend on the thread count.
pub const MC_CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct McResult {
    pub curve: RewardCurve,
    /// Standard error of the mean at each step.
    pub stderr: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// Monte Carlo estimate of the expected cumulative reward. Trial `i` draws
/// from ChaCha8 seeded with `seed` on stream `i`.
pub fn mc_simulate(
    tp: &TrustParams,
    policy: &Policy,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<McResult, TrustError> {
    if trials == 0 {
        return Err(TrustError::InvalidParameter { name: "trials", value: "0".into(), expected: "trials >= 1" });
    }
    let space = StateSpace::new(tp, n);
    let chunks: Vec<(Vec<f64>, Vec<f64>)> = (0..trials.div_ceil(MC_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut sum = vec![0.0; n];
            let mut sum_sq = vec![0.0; n];
            for trial in c * MC_CHUNK..((c + 1) * MC_CHUNK).min(trials) {
                run_trial(tp, policy, &space, n, seed, trial as u64, &mut sum, &mut sum_sq);
            }
            (sum, sum_sq)
        })
        .collect();
    let mut sum = vec![0.0; n];
    let mut sum_sq = vec![0.0; n];
    for (s, q) in &chunks {
        for t in 0..n {
            sum[t] += s[t];
            sum_sq[t] += q[t];
        }
    }
    let m = trials as f64;
    let mut values = Vec::with_capacity(n);
    let mut stderr = Vec::with_capacity(n);
    for t in 0..n {
        let mean = sum[t] / m;
        values.push(mean);
        stderr.push(if trials > 1 {
            let var = ((sum_sq[t] - m * mean * mean) / (m - 1.0)).max(0.0);
            (var / m).sqrt()
        } else {
            0.0
        });
    }
    Ok(McResult { curve: RewardCurve { values }, stderr, trials, seed })
}

#[allow(clippy::too_many_arguments)]
fn run_trial(
    tp: &TrustParams,
    policy: &Policy,
    space: &StateSpace,
    n: usize,
    seed: u64,
    trial: u64,
    sum: &mut [f64],
    sum_sq: &mut [f64],
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let (p0, l, g, r) = (tp.p0(), tp.l(), tp.g(), tp.r());
    let mut p = p0;
    let mut id = 0;
    let mut total = 0.0;
    for step in 1..=n {
        if policy.recommends(step, n, space.state(id)) {
            if rng.gen::<f64>() < p {
                total += r;
                if tp.reset() {
                    p = p0;
                }
                id = space.success(id);
            } else {
                p *= l;
                id = space.fail(id);
            }
        } else {
            p = (p * g).min(p0);
            id = space.skip(id);
        }
        sum[step - 1] += total;
        sum_sq[step - 1] += total * total;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trust::{dp_optimal, evaluate_policy};

    fn fig2() -> TrustParams {
        TrustParams::new(0.5, 0.66, 1.33, 1.0, true).unwrap()
    }

    #[test]
    fn agrees_with_exact_evaluation() {
        let tp = fig2();
        let sol = dp_optimal(&tp, 100).unwrap();
        for policy in [Policy::All, Policy::EveryK(2), Policy::Optimal(sol.policy.clone())] {
            let exact = evaluate_policy(&tp, &policy, 100);
            let mc = mc_simulate(&tp, &policy, 100, 20_000, 7).unwrap();
            for t in [1, 10, 50, 100] {
                let z = (mc.curve.at(t) - exact.at(t)).abs() / mc.stderr[t - 1].max(1e-12);
                assert!(z < 5.0, "{} t={t}: {} vs {}", policy.name(), mc.curve.at(t), exact.at(t));
            }
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let tp = fig2();
        let a = mc_simulate(&tp, &Policy::All, 30, 3000, 42).unwrap();
        let b = mc_simulate(&tp, &Policy::All, 30, 3000, 42).unwrap();
        let c = mc_simulate(&tp, &Policy::All, 30, 3000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.curve, c.curve);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let tp = fig2();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mc_simulate(&tp, &Policy::EveryK(2), 20, 5000, 1).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(mc_simulate(&fig2(), &Policy::All, 5, 0, 0).is_err());
    }
}
