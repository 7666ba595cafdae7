//! `dilog(x) = integral_x^1 -ln(t) / (1 - t) dt`, which equals `Li2(1 - x)`.
//! Nonnegative and decreasing on `[0, 1]`, with `dilog(1) = 0` and
//! `dilog(0) = pi^2 / 6`.

use std::f64::consts::PI;

use super::TrustError;

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Past this point the integrand `u / (e^u - 1)` contributes below 1e-30.
const U_MAX: f64 = 80.0;

fn integrand(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        u / u.exp_m1()
    }
}

/// One 15-point Kronrod estimate and its difference to the embedded
/// 7-point Gauss rule.
fn gk15(f: fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adaptive(f: fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, tol / 2.0, depth - 1) + adaptive(f, mid, b, tol / 2.0, depth - 1)
}

fn check_domain(x: f64) -> Result<(), TrustError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(TrustError::DilogDomain(x))
    }
}

/// Adaptive Gauss-Kronrod quadrature after substituting `t = e^{-u}`,
/// which turns the integral into `integral_0^{-ln x} u / (e^u - 1) du`
/// with a smooth, bounded integrand.
pub fn dilog(x: f64) -> Result<f64, TrustError> {
    check_domain(x)?;
    if x == 1.0 {
        return Ok(0.0);
    }
    let upper = if x == 0.0 { U_MAX } else { (-x.ln()).min(U_MAX) };
    Ok(adaptive(integrand, 0.0, upper, 1e-13, 30))
}

/// `Li2(1 - x)` from its power series, using the reflection
/// `Li2(y) = pi^2/6 - ln(y) ln(1 - y) - Li2(1 - y)` when `y > 1/2`.
pub fn dilog_series(x: f64) -> Result<f64, TrustError> {
    check_domain(x)?;
    let y = 1.0 - x;
    if y <= 0.5 {
        return Ok(li2_small(y));
    }
    if x == 0.0 {
        return Ok(PI * PI / 6.0);
    }
    Ok(PI * PI / 6.0 - y.ln() * x.ln() - li2_small(x))
}

/// `sum_{k >= 1} y^k / k^2` for `0 <= y <= 1/2`.
fn li2_small(y: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = y;
    let mut k = 1.0;
    while power > 1e-18 {
        sum += power / (k * k);
        power *= y;
        k += 1.0;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(dilog(1.0).unwrap(), 0.0);
        assert!((dilog(0.0).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        assert!((dilog_series(0.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert_eq!(dilog_series(1.0).unwrap(), 0.0);
    }

    #[test]
    fn value_at_034() {
        // Direct series sum_k 0.66^k / k^2, written out independently.
        let direct: f64 = (1..400).map(|k| 0.66f64.powi(k) / (k as f64).powi(2)).sum();
        let v = dilog(0.34).unwrap();
        assert!((v - direct).abs() < 1e-12, "{v} vs {direct}");
        assert!((v - 0.8226).abs() < 5e-4);
    }

    #[test]
    fn quadrature_agrees_with_series() {
        for i in 0..=200 {
            let x = i as f64 / 200.0;
            let a = dilog(x).unwrap();
            let b = dilog_series(x).unwrap();
            assert!((a - b).abs() < 1e-10, "x = {x}: {a} vs {b}");
        }
        for x in [1e-12, 1e-6, 0.999_999, 0.5] {
            assert!((dilog(x).unwrap() - dilog_series(x).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_outside_unit_interval() {
        assert_eq!(dilog(-0.1), Err(TrustError::DilogDomain(-0.1)));
        assert!(dilog(1.5).is_err());
        assert!(dilog_series(f64::NAN).is_err());
    }
}
