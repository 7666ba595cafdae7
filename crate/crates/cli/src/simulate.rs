use std::path::{Path, PathBuf};
use std::process::ExitCode;

use fairprice_core::io::{reward_rows, write_reward_csv, RewardRow};
use fairprice_core::rational::parse_rational;
use fairprice_core::trust::{
    dp_optimal, evaluate_policy, exact_series_no_reset, mc_simulate, with_reset_total, Policy, StateSpace, TrustParams,
};

use crate::error::CliError;
use crate::{emit, SimulateArgs};

/// Longest horizon accepted before sizing the state space.
const MAX_STEPS: usize = 10_000_000;
/// Largest trust state space for exact evaluation.
const MAX_STATES: usize = 4_000_000;
/// Bound on states times steps for exact evaluation.
const MAX_WORK: u128 = 4_000_000_000;
/// Bound on trials times steps for Monte Carlo.
const MAX_MC_STEPS: u128 = 10_000_000_000;

fn params(args: &SimulateArgs) -> Result<TrustParams, CliError> {
    let num = |name: &str, text: &str| parse_rational(text).map_err(|e| CliError::Invalid(format!("--{name}: {e}")));
    let tp = TrustParams::exact(
        num("p0", &args.p0)?,
        num("l", &args.l)?,
        num("g", &args.g)?,
        num("r", &args.r)?,
        !args.no_reset,
    )?;
    Ok(tp)
}

fn parse_policies(text: &str) -> Result<Vec<String>, CliError> {
    let mut names = Vec::new();
    for name in text.split(',').map(str::trim) {
        let valid = match name {
            "all" | "optimal" => true,
            _ => name.strip_prefix("every-k:").and_then(|k| k.parse::<usize>().ok()).is_some_and(|k| k >= 1),
        };
        if !valid {
            return Err(CliError::Invalid(format!(
                "unknown policy `{name}`; expected all, optimal or every-k:<k> with k >= 1"
            )));
        }
        if !names.iter().any(|n| n == name) {
            names.push(name.to_string());
        }
    }
    Ok(names)
}

fn check_caps(tp: &TrustParams, args: &SimulateArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Invalid("--n must be at least 1".into()));
    }
    if args.n > MAX_STEPS {
        return Err(CliError::Cap(format!("--n {} exceeds the limit of {MAX_STEPS}", args.n)));
    }
    let states = StateSpace::size(tp, args.n);
    if states > MAX_STATES || states as u128 * args.n as u128 > MAX_WORK {
        return Err(CliError::Cap(format!(
            "horizon {} needs {states} trust states; exact evaluation is limited to {MAX_STATES} states and {MAX_WORK} state-steps",
            args.n
        )));
    }
    if args.mc {
        if args.trials == 0 {
            return Err(CliError::Invalid("--trials must be at least 1".into()));
        }
        if args.trials as u128 * args.n as u128 > MAX_MC_STEPS {
            return Err(CliError::Cap(format!("--trials times --n exceeds {MAX_MC_STEPS} simulated steps")));
        }
    }
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(CliError::Invalid(format!("--tol must be positive, got {}", args.tol)));
    }
    Ok(())
}

pub fn run(args: &SimulateArgs) -> Result<ExitCode, CliError> {
    let tp = params(args)?;
    let names = parse_policies(&args.policy)?;
    check_caps(&tp, args)?;
    let n = args.n;

    let mut per_policy: Vec<(String, Vec<RewardRow>)> = Vec::new();
    for name in &names {
        let policy = match name.as_str() {
            "all" => Policy::All,
            "optimal" => Policy::Optimal(dp_optimal(&tp, n)?.policy),
            every => Policy::EveryK(every["every-k:".len()..].parse().expect("validated above")),
        };
        let curve = evaluate_policy(&tp, &policy, n);
        let mc = if args.mc { Some(mc_simulate(&tp, &policy, n, args.trials, args.seed)?) } else { None };
        per_policy.push((name.clone(), reward_rows(name, &curve, mc.as_ref())));
    }

    report_limits(&tp, args.tol);

    if args.split {
        let base = args.out.as_ref().expect("clap requires --out with --split");
        for (name, rows) in &per_policy {
            emit(Some(&split_path(base, name)), &write_reward_csv(rows))?;
        }
    } else {
        let rows: Vec<RewardRow> = per_policy.into_iter().flat_map(|(_, rows)| rows).collect();
        emit(args.out.as_ref(), &write_reward_csv(&rows))?;
    }
    Ok(ExitCode::SUCCESS)
}

/// Infinite-horizon totals for recommending everything, when known.
fn report_limits(tp: &TrustParams, tol: f64) {
    if tp.has_recovery() {
        return;
    }
    let limit = if tp.reset() { with_reset_total(tp, tol) } else { exact_series_no_reset(tp, tol) };
    if let Ok(t) = limit {
        eprintln!("limit for policy all as n grows: {:.12} (truncation error <= {:.3e})", t.value, t.error_bound);
    }
}

/// `out.csv` and `every-k:3` give `out-every-k-3.csv`.
fn split_path(base: &Path, policy: &str) -> PathBuf {
    let slug: String = policy.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '-' }).collect();
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}-{slug}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{slug}"),
    };
    base.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_names() {
        assert_eq!(split_path(Path::new("/tmp/out.csv"), "every-k:3"), PathBuf::from("/tmp/out-every-k-3.csv"));
        assert_eq!(split_path(Path::new("curves"), "all"), PathBuf::from("curves-all"));
    }

    #[test]
    fn policy_lists() {
        assert_eq!(parse_policies("all,every-k:3,all").unwrap(), vec!["all", "every-k:3"]);
        assert!(parse_policies("every-k:0").is_err());
        assert!(parse_policies("sometimes").is_err());
    }
}
