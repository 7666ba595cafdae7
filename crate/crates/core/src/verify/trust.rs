use std::f64::consts::{E, PI};

use super::{Claim, Claims, VerifyOptions};
use crate::trust::{
    closed_form_no_reset, dilog, dilog_series, dp_optimal, evaluate_policy, exact_series_no_reset,
    failure_probability_q, heuristic_closed_form, heuristic_reward, mc_simulate, q_lower_bound, reward_upper_bound,
    with_reset_total, Policy, TrustError, TrustParams, DEFAULT_TOL,
};

const GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn params(p0: f64, l: f64, g: f64, reset: bool) -> Result<TrustParams, TrustError> {
    TrustParams::new(p0, l, g, 1.0, reset)
}

pub(super) fn bounds() -> Vec<Claim> {
    let mut c = Claims::default();

    c.run("q >= delta(c) > 0 on the (p0, l) grid", || {
        let mut worst = f64::INFINITY;
        for p0 in GRID {
            for l in GRID {
                let tp = params(p0, l, 1.0, true)?;
                let q = failure_probability_q(&tp, DEFAULT_TOL)?;
                let delta = q_lower_bound(&tp)?;
                if delta <= 0.0 {
                    return Ok::<_, TrustError>((false, format!("delta = {delta} at p0={p0}, l={l}")));
                }
                worst = worst.min(q.value - q.error_bound - delta);
            }
        }
        Ok((worst >= 0.0, format!("min (q - delta) = {worst:.3e}")))
    });

    c.run("with_reset_total <= reward_upper_bound on the (p0, l) grid", || {
        let mut worst = f64::INFINITY;
        for p0 in GRID {
            for l in GRID {
                let tp = params(p0, l, 1.0, true)?;
                let total = with_reset_total(&tp, DEFAULT_TOL)?;
                worst = worst.min(reward_upper_bound(&tp)? - total.value - total.error_bound);
            }
        }
        Ok::<_, TrustError>((worst >= 0.0, format!("min slack = {worst:.3e}")))
    });

    c.run("exact series <= closed form on the (p0, l) grid", || {
        let mut worst = f64::INFINITY;
        for p0 in GRID {
            for l in GRID {
                let tp = params(p0, l, 1.0, false)?;
                let s = exact_series_no_reset(&tp, DEFAULT_TOL)?;
                worst = worst.min(closed_form_no_reset(&tp)? - s.value - s.error_bound);
            }
        }
        Ok::<_, TrustError>((worst >= 0.0, format!("min slack = {worst:.3e}")))
    });

    let xs: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    c.run("dilog is decreasing on [0, 1]", || {
        let values = xs.iter().map(|&x| dilog(x)).collect::<Result<Vec<_>, _>>()?;
        let increases = values.windows(2).filter(|w| w[1] > w[0]).count();
        Ok::<_, TrustError>((increases == 0, format!("{increases} increases over 1001 points")))
    });

    c.run("0 <= dilog <= min(2/e + 1, pi^2/6)", || {
        let cap = (2.0 / E + 1.0).min(PI * PI / 6.0) + 1e-9;
        let mut max = 0.0f64;
        let mut min = f64::INFINITY;
        for &x in &xs {
            let v = dilog(x)?;
            max = max.max(v);
            min = min.min(v);
        }
        Ok::<_, TrustError>((min >= 0.0 && max <= cap, format!("range [{min:.6}, {max:.6}], cap {cap:.6}")))
    });

    c.run("dilog quadrature agrees with the power series", || {
        let mut worst = 0.0f64;
        for &x in &xs {
            worst = worst.max((dilog(x)? - dilog_series(x)?).abs());
        }
        Ok::<_, TrustError>((worst <= 1e-9, format!("max difference {worst:.3e}")))
    });

    c.0
}

pub(super) fn figure2(opts: &VerifyOptions) -> Vec<Claim> {
    const N: usize = 200;
    let mut c = Claims::default();

    c.run("no reset, no recovery: reward converges to 2.25 +- 0.05", || {
        let tp = params(0.5, 0.66, 1.0, false)?;
        let v = evaluate_policy(&tp, &Policy::All, N).final_value();
        let series = exact_series_no_reset(&tp, DEFAULT_TOL)?.value;
        let pass = (v - 2.25).abs() <= 0.05 && (series - v).abs() < 1e-6;
        Ok::<_, TrustError>((pass, format!("final {v:.6}, exact series {series:.6}")))
    });

    c.run("reset, no recovery: reward converges to 5 +- 0.1", || {
        let tp = params(0.5, 0.66, 1.0, true)?;
        let v = evaluate_policy(&tp, &Policy::All, N).final_value();
        let limit = with_reset_total(&tp, DEFAULT_TOL)?.value;
        let pass = (v - 5.0).abs() <= 0.1 && (limit - v).abs() < 1e-6;
        Ok::<_, TrustError>((pass, format!("final {v:.6}, fixed point {limit:.6}")))
    });

    let tp = match params(0.5, 0.66, 1.33, true) {
        Ok(tp) => tp,
        Err(e) => {
            c.check("figure-2 parameters", false, e.to_string());
            return c.0;
        }
    };

    c.run("every-k:2 is bounded and nondecreasing (Cauchy)", || {
        let a2 = heuristic_reward(&tp, 2, N)?;
        let reduced = tp.without_recovery().with_loss(tp.l_exact() * tp.g_exact())?;
        let bound = with_reset_total(&reduced, DEFAULT_TOL)?;
        let monotone = a2.values.windows(2).all(|w| w[1] >= w[0]);
        let pass = monotone && a2.final_value() <= bound.value + bound.error_bound;
        Ok::<_, TrustError>((pass, format!("A_200 = {:.6} <= limit {:.6}", a2.final_value(), bound.value)))
    });

    for (k, expected) in [(3usize, 33.0), (4, 25.0)] {
        c.run(&format!("every-k:{k} grows with slope p0 r / {k}, final {expected}"), || {
            let a = heuristic_reward(&tp, k, N)?;
            let last_block = N / k * k;
            let linear = (k + 1..=last_block).all(|t| a.at(t) - a.at(t - k) == 0.5);
            let closed = heuristic_closed_form(&tp, k, N);
            let pass = linear && a.final_value() == expected && closed == Some(expected);
            Ok::<_, TrustError>((pass, format!("final {}, closed form {closed:?}", a.final_value())))
        });
    }

    let dp = dp_optimal(&tp, N);
    c.run("optimal M_n >= A^(3)_n for n <= 200 and keeps growing", || {
        let sol = dp.as_ref().map_err(Clone::clone)?;
        let a3 = heuristic_reward(&tp, 3, N)?;
        let dominated = (1..=N).all(|t| sol.values[t] >= a3.at(t) - 1e-9);
        let growth = sol.values[200] - sol.values[100];
        let a_growth =
            heuristic_closed_form(&tp, 3, 200).unwrap_or(0.0) - heuristic_closed_form(&tp, 3, 100).unwrap_or(0.0);
        let pass = dominated && growth > 0.9 * a_growth;
        Ok::<_, TrustError>((
            pass,
            format!("M_200 = {:.6}, M_200 - M_100 = {growth:.6} vs A3 growth {a_growth}", sol.values[200]),
        ))
    });

    let mut policies = vec![Policy::All, Policy::EveryK(2), Policy::EveryK(3), Policy::EveryK(4)];
    if let Ok(sol) = &dp {
        policies.push(Policy::Optimal(sol.policy.clone()));
    }
    for policy in policies {
        let name = format!("Monte Carlo within 3 sigma: {}", policy.name());
        c.run(&name, || {
            let exact = evaluate_policy(&tp, &policy, N);
            let mc = mc_simulate(&tp, &policy, N, opts.trials, opts.seed)?;
            let mut worst = 0.0f64;
            for t in [1, 50, 100, 150, 200] {
                let se = mc.stderr[t - 1];
                let diff = (mc.curve.at(t) - exact.at(t)).abs();
                worst = worst.max(if se > 0.0 {
                    diff / se
                } else if diff == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                });
            }
            Ok::<_, TrustError>((
                worst <= 3.0,
                format!(
                    "exact {:.6}, MC {:.6} +- {:.6}, max |z| {worst:.2}",
                    exact.final_value(),
                    mc.curve.final_value(),
                    mc.stderr[N - 1]
                ),
            ))
        });
    }

    c.0
}
