//! Closed forms and truncated infinite sums/products for the process
//! without recovery.

use super::{check_tol, dilog, TrustError, TrustParams};

/// Default truncation threshold for series terms and product factors.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A truncated infinite sum or product with a bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncated {
    pub value: f64,
    pub error_bound: f64,
    pub terms: usize,
}

fn require_no_recovery(tp: &TrustParams) -> Result<(), TrustError> {
    if tp.has_recovery() {
        Err(TrustError::WrongRegime("this closed form assumes no recovery (g = 1)"))
    } else {
        Ok(())
    }
}

fn require_reset(tp: &TrustParams, want: bool) -> Result<(), TrustError> {
    match (tp.reset(), want) {
        (true, false) => Err(TrustError::WrongRegime("this closed form assumes no reset")),
        (false, true) => Err(TrustError::WrongRegime("this closed form assumes reset on success")),
        _ => Ok(()),
    }
}

/// `p0 / (1 - p0) * 1 / (1 - l) * r`.
///
/// This treats the odds `1 / (1 - p)` as if they stayed at their initial
/// value, so it over-estimates [`exact_series_no_reset`] term by term.
pub fn closed_form_no_reset(tp: &TrustParams) -> Result<f64, TrustError> {
    require_no_recovery(tp)?;
    require_reset(tp, false)?;
    let (p0, l) = (tp.p0(), tp.l());
    Ok(p0 / (1.0 - p0) / (1.0 - l) * tp.r())
}

/// Expected total reward of recommending everything, without reset or
/// recovery: `sum_i (l^i p0) / (1 - l^i p0) * r`.
///
/// At trust level `p` the recommender collects `p / (1 - p)` successes in
/// expectation before the next failure. The sum stops at the first term
/// below `tol`; consecutive terms shrink by at least a factor `l`, so the
/// tail is at most that term times `l / (1 - l)`.
pub fn exact_series_no_reset(tp: &TrustParams, tol: f64) -> Result<Truncated, TrustError> {
    require_no_recovery(tp)?;
    require_reset(tp, false)?;
    check_tol(tol)?;
    let (p0, l, r) = (tp.p0(), tp.l(), tp.r());
    let mut sum = 0.0;
    let mut p = p0;
    let mut terms = 0;
    loop {
        let term = p / (1.0 - p) * r;
        sum += term;
        terms += 1;
        if term < tol {
            return Ok(Truncated { value: sum, error_bound: term * l / (1.0 - l), terms });
        }
        p *= l;
    }
}

/// Probability `q = prod_{k >= 0} (1 - l^k p0)` that, starting from full
/// trust with reset, no recommendation ever succeeds.
///
/// Factors are multiplied until `l^k p0 < tol`. The omitted factors lie in
/// `[exp(-T / (1 - x)), 1]`, where `T` bounds the omitted `sum l^k p0` and `x`
/// is the largest omitted `l^k p0`; the product's reported error is
/// `P (1 - exp(-T / (1 - x)))`, and the true value is at most `P`.
pub fn failure_probability_q(tp: &TrustParams, tol: f64) -> Result<Truncated, TrustError> {
    require_no_recovery(tp)?;
    require_reset(tp, true)?;
    check_tol(tol)?;
    let (p0, l) = (tp.p0(), tp.l());
    let mut product = 1.0;
    let mut x = p0;
    let mut terms = 0;
    while x >= tol {
        product *= 1.0 - x;
        terms += 1;
        x *= l;
    }
    // Omitted: x, x l, x l^2, ...
    let tail = x / (1.0 - l);
    let error_bound = product * (1.0 - (-tail / (1.0 - x)).exp());
    Ok(Truncated { value: product, error_bound, terms })
}

/// Expected total reward with reset and no recovery, `(1 - q) / q * r`.
///
/// Each success restarts the process from `p0`, so the number of successes
/// before the final, never-ending run of failures is geometric with
/// stopping probability `q`.
pub fn with_reset_total(tp: &TrustParams, tol: f64) -> Result<Truncated, TrustError> {
    let q = failure_probability_q(tp, tol)?;
    if q.value <= 0.0 {
        return Err(TrustError::ZeroFailureProbability);
    }
    let r = tp.r();
    let value = (1.0 - q.value) / q.value * r;
    // d/dq [(1 - q) / q] = -1 / q^2, and q only decreases within its bound.
    let low = (q.value - q.error_bound).max(f64::MIN_POSITIVE);
    let error_bound = ((1.0 - low) / low * r) - value;
    Ok(Truncated { value, error_bound, terms: q.terms })
}

/// `delta(c) = (1 - c) exp(dilog(1 - c) / ln c)` with `c = max(p0, l)`, a
/// lower bound on [`failure_probability_q`].
pub fn q_lower_bound(tp: &TrustParams) -> Result<f64, TrustError> {
    let c = tp.p0().max(tp.l());
    if !(c > 0.0 && c < 1.0) {
        return Err(TrustError::InvalidParameter {
            name: "c = max(p0, l)",
            value: format!("{c}"),
            expected: "0 < c < 1",
        });
    }
    Ok((1.0 - c) * (dilog(1.0 - c)? / c.ln()).exp())
}

/// `(1 - delta(c)) / delta(c) * r`, an upper bound on [`with_reset_total`].
pub fn reward_upper_bound(tp: &TrustParams) -> Result<f64, TrustError> {
    let delta = q_lower_bound(tp)?;
    if delta <= 0.0 {
        return Err(TrustError::DegenerateBound(tp.p0().max(tp.l())));
    }
    Ok((1.0 - delta) / delta * tp.r())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p0: f64, l: f64, reset: bool) -> TrustParams {
        TrustParams::new(p0, l, 1.0, 1.0, reset).unwrap()
    }

    #[test]
    fn closed_form_value() {
        let v = closed_form_no_reset(&params(0.5, 0.66, false)).unwrap();
        assert!((v - 1.0 / 0.34).abs() < 1e-12);
        let tiny = closed_form_no_reset(&params(1e-9, 0.66, false)).unwrap();
        assert!(tiny < 1e-8);
        let no_loss = closed_form_no_reset(&params(0.3, 0.0, false)).unwrap();
        assert!((no_loss - 0.3 / 0.7).abs() < 1e-15);
    }

    #[test]
    fn exact_series_matches_direct_summation() {
        let tp = params(0.5, 0.66, false);
        let s = exact_series_no_reset(&tp, DEFAULT_TOL).unwrap();
        // Independent: sum 2000 terms with explicit powers.
        let direct: f64 = (0..2000)
            .map(|i| {
                let p = 0.5 * 0.66f64.powi(i);
                p / (1.0 - p)
            })
            .sum();
        assert!((s.value - direct).abs() < 1e-10, "{} vs {direct}", s.value);
        assert!((s.value - 2.24).abs() < 0.01);
        assert!(s.value <= closed_form_no_reset(&tp).unwrap());
    }

    #[test]
    fn no_loss_series_is_single_term() {
        let s = exact_series_no_reset(&params(0.5, 0.0, false), DEFAULT_TOL).unwrap();
        assert_eq!(s.value, 1.0);
    }

    #[test]
    fn regimes_and_tolerance_are_checked() {
        assert!(exact_series_no_reset(&params(0.5, 0.66, true), 1e-12).is_err());
        assert!(exact_series_no_reset(&params(0.5, 0.66, false), 0.0).is_err());
        assert!(failure_probability_q(&params(0.5, 0.66, false), 1e-12).is_err());
        let rec = TrustParams::new(0.5, 0.66, 1.33, 1.0, false).unwrap();
        assert!(closed_form_no_reset(&rec).is_err());
    }

    #[test]
    fn failure_probability_examples() {
        let q = failure_probability_q(&params(0.5, 0.66, true), DEFAULT_TOL).unwrap();
        let direct: f64 = (0..3000).map(|k| 1.0 - 0.5 * 0.66f64.powi(k)).product();
        assert!((q.value - direct).abs() < 1e-12);
        assert!((q.value - 0.168).abs() < 0.001, "q = {}", q.value);
        let q = failure_probability_q(&params(1e-9, 0.66, true), DEFAULT_TOL).unwrap();
        assert!((q.value - 1.0).abs() < 1e-8);
        let q = failure_probability_q(&params(0.3, 0.0, true), DEFAULT_TOL).unwrap();
        assert!((q.value - 0.7).abs() < 1e-15);
    }

    #[test]
    fn with_reset_examples() {
        let tp = params(0.5, 0.66, true);
        let total = with_reset_total(&tp, DEFAULT_TOL).unwrap();
        assert!((total.value - 4.94).abs() < 0.01, "{}", total.value);
        assert!(total.value <= reward_upper_bound(&tp).unwrap());
        let tiny = with_reset_total(&params(1e-9, 0.5, true), DEFAULT_TOL).unwrap();
        assert!(tiny.value < 1e-8);
    }

    #[test]
    fn lower_bound_example() {
        let tp = params(0.5, 0.66, true);
        let delta = q_lower_bound(&tp).unwrap();
        let expected = 0.34 * (dilog(0.34).unwrap() / 0.66f64.ln()).exp();
        assert!((delta - expected).abs() < 1e-15);
        assert!((delta - 0.047).abs() < 0.001, "delta = {delta}");
        let bound = reward_upper_bound(&tp).unwrap();
        assert!((bound - 20.3).abs() < 0.1, "bound = {bound}");
        let near_one = q_lower_bound(&params(0.999, 0.5, true)).unwrap();
        assert!(near_one < 1e-3);
        let near_zero = reward_upper_bound(&params(1e-6, 1e-6, true)).unwrap();
        assert!(near_zero < 1e-5);
    }
}
