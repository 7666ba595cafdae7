//! Exact rational numbers and their text forms.
//!
//! Every quantity in the coalitional-game machinery is a [`Rational`]. Inputs
//! arrive either as `a/b` strings or as decimal literals, and decimals are
//! converted by base-10 scaling so that `0.1` is exactly `1/10`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"3/5"`, `"-2"`, `"0.125"`, `"1e-3"` or `"2.5E2"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num.trim()).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        let d = parse_decimal(den.trim()).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.into()));
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(|| ParseRationalError::Invalid(s.into()))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    Some(value)
}

/// Converts an `f64` through its shortest round-trip decimal form, so that
/// `0.66_f64` becomes exactly `66/100` rather than its binary expansion.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    parse_rational(&format!("{x}")).ok()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `"3/5"` or `"2"` for integers.
pub fn exact_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering of an exact rational, rounded half away from zero to
/// `sig` significant digits, without exponent notation and without trailing
/// zeros.
pub fn decimal_string(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let sig = sig.max(1);
    let negative = r.is_negative();
    let a = r.abs();
    // Position of the leading digit: 10^e <= a < 10^(e+1).
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if rem * BigInt::from(2) >= *scaled.denom() { q + 1 } else { q };
    let mut digits = rounded.to_string();
    if shift > 0 {
        let frac_digits = shift as usize;
        if digits.len() <= frac_digits {
            digits = format!("{}{}", "0".repeat(frac_digits + 1 - digits.len()), digits);
        }
        let (i, f) = digits.split_at(digits.len() - frac_digits);
        let f = f.trim_end_matches('0');
        digits = if f.is_empty() { i.to_string() } else { format!("{i}.{f}") };
    } else {
        digits.push_str(&"0".repeat(shift.unsigned_abs() as usize));
    }
    if negative && digits.bytes().any(|b| b != b'0' && b != b'.') {
        format!("-{digits}")
    } else {
        digits
    }
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// 12-significant-digit decimal rendering of a float, matching
/// [`decimal_string`] on the float's exact value.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    let r = Rational::from_float(x).expect("finite");
    decimal_string(&r, 12)
}
