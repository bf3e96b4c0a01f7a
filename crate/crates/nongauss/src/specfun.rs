//! Self-contained special-function kernel.
//!
//! Standard normal density/CDF/quantile, log-gamma, digamma, trigamma and
//! the regularized incomplete beta function with its inverse. These are the
//! numeric substrate for every distribution in the crate; all routines are
//! pure functions of their arguments and safe to call concurrently.
//!
//! Accuracy targets: the normal CDF is good to ~1e-15 absolute over
//! |x| <= 8 (Cody-style rational erfc), the quantile is a rational
//! approximation polished by one Halley step on the CDF, and the gamma-family
//! functions use upward recurrence into the asymptotic (Stirling-type)
//! regime.

use crate::error::{Error, Result};

/// 1/sqrt(2*pi)
pub const FRAC_1_SQRT_2PI: f64 = 0.3989422804014326779399460599343818684759;
/// ln(sqrt(2*pi))
pub const LN_SQRT_2PI: f64 = 0.9189385332046727417803297364056176398614;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
/// 1/sqrt(pi)
const FRAC_1_SQRT_PI: f64 = 0.5641895835477562869480794515607725858441;

/// Largest |z| for which the Gaussian CDF is strictly inside (0, 1) in f64;
/// beyond this the tail probability drops below eps/2 and Phi rounds to 0/1.
pub const GAUSSIAN_SATURATION_Z: f64 = 8.209536151601387;

// ---------------------------------------------------------------------------
// standard normal
// ---------------------------------------------------------------------------

/// Standard normal density phi(x) = exp(-x^2/2)/sqrt(2 pi).
pub fn std_normal_pdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("std_normal_pdf: non-finite x = {x}")));
    }
    Ok(phi_raw(x))
}

/// Standard normal distribution function Phi(x).
pub fn std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("std_normal_cdf: non-finite x = {x}")));
    }
    Ok(norm_cdf_raw(x))
}

/// Inverse of the standard normal distribution function.
///
/// Rational approximation (Acklam) refined by one Halley step on the CDF,
/// giving a quantile accurate to ~1e-15 on (0, 1).
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::domain(format!(
            "std_normal_quantile: p = {p} outside [0, 1]"
        )));
    }
    if p == 0.0 || p == 1.0 {
        return Err(Error::InfiniteQuantile(p));
    }
    Ok(norm_quantile_raw(p))
}

#[inline]
pub(crate) fn phi_raw(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

#[inline]
pub(crate) fn ln_phi_raw(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

#[inline]
pub(crate) fn norm_cdf_raw(x: f64) -> f64 {
    0.5 * erfc_raw(-x * FRAC_1_SQRT_2)
}

/// Complementary error function, Cody's rational Chebyshev approximation
/// (the classic CALERF coefficient set; relative error below ~1.2e-16 for
/// positive arguments).
fn erfc_raw(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc_raw(-x);
    }
    let y = x;
    if y <= 0.46875 {
        return 1.0 - erf_small(y) * x.signum();
    }
    let result = if y <= 4.0 {
        const C: [f64; 9] = [
            5.64188496988670089e-1,
            8.88314979438837594e0,
            6.61191906371416295e1,
            2.98635138197400131e2,
            8.81952221241769090e2,
            1.71204761263407058e3,
            2.05107837782607147e3,
            1.23033935479799725e3,
            2.15311535474403846e-8,
        ];
        const D: [f64; 8] = [
            1.57449261107098347e1,
            1.17693950891312499e2,
            5.37181101862009858e2,
            1.62138957456669019e3,
            3.29079923573345963e3,
            4.36261909014324716e3,
            3.43936767414372164e3,
            1.23033935480374942e3,
        ];
        let mut xnum = C[8] * y;
        let mut xden = y;
        for i in 0..7 {
            xnum = (xnum + C[i]) * y;
            xden = (xden + D[i]) * y;
        }
        (xnum + C[7]) / (xden + D[7])
    } else {
        const P: [f64; 6] = [
            3.05326634961232344e-1,
            3.60344899949804439e-1,
            1.25781726111229246e-1,
            1.60837851487422766e-2,
            6.58749161529837803e-4,
            1.63153871373020978e-2,
        ];
        const Q: [f64; 5] = [
            2.56852019228982242e0,
            1.87295284992346047e0,
            5.27905102951428412e-1,
            6.05183413124413191e-2,
            2.33520497626869185e-3,
        ];
        if y >= 26.6 {
            return 0.0;
        }
        let ysq = 1.0 / (y * y);
        let mut xnum = P[5] * ysq;
        let mut xden = ysq;
        for i in 0..4 {
            xnum = (xnum + P[i]) * ysq;
            xden = (xden + Q[i]) * ysq;
        }
        let r = ysq * (xnum + P[4]) / (xden + Q[4]);
        (FRAC_1_SQRT_PI - r) / y
    };
    // split exp(-y^2) so the squared truncation stays exact
    let ysq = (y * 16.0).trunc() / 16.0;
    let del = (y - ysq) * (y + ysq);
    (-ysq * ysq).exp() * (-del).exp() * result
}

/// erf on |x| <= 0.46875.
fn erf_small(y: f64) -> f64 {
    const A: [f64; 5] = [
        3.16112374387056560e0,
        1.13864154151050156e2,
        3.77485237685302021e2,
        3.20937758913846947e3,
        1.85777706184603153e-1,
    ];
    const B: [f64; 4] = [
        2.36012909523441209e1,
        2.44024637934444173e2,
        1.28261652607737228e3,
        2.84423683343917062e3,
    ];
    let ysq = if y > 1.11e-16 { y * y } else { 0.0 };
    let mut xnum = A[4] * ysq;
    let mut xden = ysq;
    for i in 0..3 {
        xnum = (xnum + A[i]) * ysq;
        xden = (xden + B[i]) * ysq;
    }
    y * (xnum + A[3]) / (xden + B[3])
}

pub(crate) fn norm_quantile_raw(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -((((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0))
    };

    // one Halley step against the high-accuracy CDF; skipped in the extreme
    // tails where exp(x^2/2) would overflow
    if x * x < 1000.0 {
        let err = norm_cdf_raw(x) - p;
        let u = err * (2.0 * std::f64::consts::PI).sqrt() * (0.5 * x * x).exp();
        x - u / (1.0 + 0.5 * x * u)
    } else {
        x
    }
}

// ---------------------------------------------------------------------------
// gamma family
// ---------------------------------------------------------------------------

/// Natural log of the gamma function for x > 0.
///
/// Upward recurrence to x >= 15, then the Stirling series.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma: x = {x} must be > 0")));
    }
    Ok(log_gamma_raw(x))
}

pub(crate) fn log_gamma_raw(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut y = x;
    while y < 15.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // Bernoulli series 1/(12y) - 1/(360y^3) + 1/(1260y^5) - ...
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2
                        * (1.0 / 1260.0
                            + inv2
                                * (-1.0 / 1680.0
                                    + inv2
                                        * (1.0 / 1188.0
                                            + inv2
                                                * (-691.0 / 360_360.0 + inv2 * (1.0 / 156.0)))))));
    (y - 0.5) * y.ln() - y + LN_SQRT_2PI + series - shift
}

/// Digamma function (derivative of log-gamma) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("digamma: x = {x} must be > 0")));
    }
    Ok(digamma_raw(x))
}

pub(crate) fn digamma_raw(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    while y < 8.0 {
        acc += 1.0 / y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv2
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 120.0
                    + inv2
                        * (1.0 / 252.0
                            + inv2
                                * (-1.0 / 240.0
                                    + inv2
                                        * (1.0 / 132.0
                                            + inv2 * (-691.0 / 32_760.0 + inv2 * (1.0 / 12.0)))))));
    y.ln() - 0.5 * inv - series - acc
}

/// Trigamma function (second derivative of log-gamma) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("trigamma: x = {x} must be > 0")));
    }
    Ok(trigamma_raw(x))
}

pub(crate) fn trigamma_raw(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    while y < 8.0 {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv
        * (1.0
            + inv * 0.5
            + inv2
                * (1.0 / 6.0
                    + inv2
                        * (-1.0 / 30.0
                            + inv2
                                * (1.0 / 42.0
                                    + inv2
                                        * (-1.0 / 30.0
                                            + inv2
                                                * (5.0 / 66.0
                                                    + inv2
                                                        * (-691.0 / 2730.0
                                                            + inv2 * (7.0 / 6.0))))))));
    series + acc
}

/// Third derivative of log-gamma (psi''), used for exact third cumulants of
/// the logistic-beta family.
pub(crate) fn tetragamma_raw(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    while y < 8.0 {
        acc -= 2.0 / (y * y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv2
        * (1.0
            + inv
            + inv2
                * (0.5
                    + inv2
                        * (-1.0 / 6.0
                            + inv2
                                * (1.0 / 6.0
                                    + inv2
                                        * (-3.0 / 10.0
                                            + inv2 * (5.0 / 6.0 + inv2 * (-691.0 / 210.0)))))));
    acc - series
}

/// Fourth derivative of log-gamma (psi'''), used for exact fourth cumulants.
pub(crate) fn pentagamma_raw(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    while y < 8.0 {
        acc += 6.0 / (y * y * y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv2
        * inv
        * (2.0
            + 3.0 * inv
            + inv2
                * (2.0
                    + inv2
                        * (-1.0
                            + inv2
                                * (4.0 / 3.0
                                    + inv2 * (-3.0 + inv2 * (10.0 + inv2 * (-1258.0 / 30.0)))))));
    acc + series
}

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
pub(crate) fn ln_beta_raw(a: f64, b: f64) -> f64 {
    log_gamma_raw(a) + log_gamma_raw(b) - log_gamma_raw(a + b)
}

// ---------------------------------------------------------------------------
// regularized incomplete beta
// ---------------------------------------------------------------------------

const BETA_MAX_ITER: usize = 300;
const BETA_EPS: f64 = 1e-15;

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and x in [0, 1].
///
/// Continued fraction with the usual symmetry switch at x = (a+1)/(a+b+2).
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "reg_inc_beta: shape parameters a = {a}, b = {b} must be positive"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "reg_inc_beta: x = {x} outside [0, 1]"
        )));
    }
    reg_inc_beta_raw(a, b, x)
}

pub(crate) fn reg_inc_beta_raw(a: f64, b: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta_raw(a, b);
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(front * beta_cont_frac(a, b, x)? / a)
    } else {
        Ok(1.0 - front * beta_cont_frac(b, a, 1.0 - x)? / b)
    }
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_cont_frac(a: f64, b: f64, x: f64) -> Result<f64> {
    const FPMIN: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=BETA_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < BETA_EPS {
            return Ok(h);
        }
    }
    Err(Error::numeric(format!(
        "incomplete beta continued fraction did not converge for a = {a}, b = {b}, x = {x}"
    )))
}

/// Inverse of the regularized incomplete beta in its third argument.
///
/// Bracketed Newton iteration with bisection fallback; p = 0 and p = 1 map to
/// the boundary points exactly.
pub fn inv_reg_inc_beta(a: f64, b: f64, p: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "inv_reg_inc_beta: shape parameters a = {a}, b = {b} must be positive"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!(
            "inv_reg_inc_beta: p = {p} outside [0, 1]"
        )));
    }
    inv_reg_inc_beta_raw(a, b, p)
}

pub(crate) fn inv_reg_inc_beta_raw(a: f64, b: f64, p: f64) -> Result<f64> {
    if p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    let ln_beta = ln_beta_raw(a, b);

    // initial guess: invert the leading-order tail behaviour when p is
    // extreme, otherwise start from the mean
    let mut x = if p < 0.1 {
        ((p * a).ln() + ln_beta) / a
    } else if p > 0.9 {
        return inv_reg_inc_beta_raw(b, a, 1.0 - p).map(|y| 1.0 - y);
    } else {
        (a / (a + b)).ln()
    }
    .exp()
    .clamp(1e-300, 1.0 - 1e-16);

    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    for _ in 0..200 {
        let f = reg_inc_beta_raw(a, b, x)? - p;
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        // relative to p, which the p > 0.9 reflection keeps away from 1
        if f.abs() < 1e-12 * p {
            return Ok(x);
        }
        let ln_pdf = (a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - ln_beta;
        let step = f * (-ln_pdf).exp();
        let candidate = x - step;
        let next = if step.is_finite() && candidate > lo && candidate < hi {
            candidate
        } else {
            0.5 * (lo + hi)
        };
        // bracket collapsed to floating-point resolution
        if next == x || hi - lo <= f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::numeric(format!(
        "inv_reg_inc_beta did not converge for a = {a}, b = {b}, p = {p}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn normal_pdf_values() {
        assert_relative_eq!(
            std_normal_pdf(0.0).unwrap(),
            0.3989422804014327,
            max_relative = 1e-14
        );
        // direct evaluation, cross-checked against quadrature of the CDF derivative
        assert_relative_eq!(
            std_normal_pdf(1.0).unwrap(),
            0.24197072451914337,
            max_relative = 1e-13
        );
        for x in [0.3, 1.7, 4.2] {
            assert_eq!(std_normal_pdf(x).unwrap(), std_normal_pdf(-x).unwrap());
        }
        assert!(std_normal_pdf(f64::NAN).is_err());
        assert!(std_normal_pdf(f64::INFINITY).is_err());
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(std_normal_cdf(0.0).unwrap(), 0.5);
        // bisection inverse of a high-precision erf series
        assert_relative_eq!(
            std_normal_cdf(1.959964).unwrap(),
            0.9750000009035576,
            epsilon = 1e-14
        );
        // asymptotic tail expansion oracle
        let tail = std_normal_cdf(-8.0).unwrap();
        assert!(tail > 0.0);
        assert_relative_eq!(tail, 6.220960574271784e-16, max_relative = 1e-12);
        assert!(std_normal_cdf(f64::NAN).is_err());
    }

    #[test]
    fn normal_cdf_symmetry() {
        for i in 0..200 {
            let x = -8.0 + i as f64 * 0.08;
            let s = std_normal_cdf(x).unwrap() + std_normal_cdf(-x).unwrap();
            assert!((s - 1.0).abs() <= 1e-14, "x = {x}: sum = {s}");
        }
    }

    #[test]
    fn normal_quantile_values() {
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
        // bisection on std_normal_cdf
        assert_relative_eq!(
            std_normal_quantile(0.975).unwrap(),
            1.9599639845400545,
            epsilon = 1e-12
        );
        for x in [-3.0, -1.0, 0.0, 1.0, 3.0] {
            let p = std_normal_cdf(x).unwrap();
            assert_relative_eq!(std_normal_quantile(p).unwrap(), x, epsilon = 1e-10);
        }
        assert!(matches!(
            std_normal_quantile(0.0),
            Err(Error::InfiniteQuantile(_))
        ));
        assert!(matches!(
            std_normal_quantile(1.0),
            Err(Error::InfiniteQuantile(_))
        ));
        assert!(std_normal_quantile(-0.1).is_err());
        assert!(std_normal_quantile(1.1).is_err());
    }

    #[test]
    fn quantile_cdf_roundtrip_grid() {
        // mutual inverses to 1e-10 across the usable probability range
        let mut p = 1e-10;
        while p < 1.0 {
            let x = std_normal_quantile(p).unwrap();
            assert!(
                (std_normal_cdf(x).unwrap() - p).abs() <= 1e-12,
                "p = {p}: cdf(quantile(p)) off"
            );
            p *= 3.7;
        }
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let x = std_normal_quantile(p).unwrap();
            assert!((std_normal_cdf(x).unwrap() - p).abs() < 1e-13);
        }
    }

    #[test]
    fn log_gamma_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert_relative_eq!(log_gamma(0.5).unwrap(), 0.5723649429247001, epsilon = 1e-13);
        assert_relative_eq!(
            log_gamma(10.0).unwrap(),
            12.801827480081469,
            max_relative = 1e-13
        );
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.0).is_err());
    }

    #[test]
    fn log_gamma_recurrence() {
        let mut x = 0.1;
        while x < 50.0 {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            assert!(
                (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0),
                "x = {x}: {lhs} vs {rhs}"
            );
            x *= 1.31;
        }
    }

    #[test]
    fn digamma_values() {
        assert_relative_eq!(digamma(1.0).unwrap(), -0.5772156649015329, epsilon = 1e-13);
        assert_relative_eq!(
            digamma(2.0).unwrap(),
            1.0 - 0.5772156649015329,
            epsilon = 1e-13
        );
        // recurrence-shift-then-asymptotic-series oracle
        assert_relative_eq!(digamma(0.45).unwrap(), -2.2335386448086681, epsilon = 1e-12);
        assert!(digamma(0.0).is_err());
        assert!(digamma(-0.5).is_err());
    }

    #[test]
    fn digamma_recurrence() {
        let mut x = 0.1;
        while x < 60.0 {
            let lhs = digamma(x + 1.0).unwrap();
            let rhs = digamma(x).unwrap() + 1.0 / x;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "x = {x}");
            x *= 1.37;
        }
    }

    #[test]
    fn digamma_is_log_gamma_derivative() {
        let h = 1e-6;
        let mut x = 0.1;
        while x < 50.0 {
            let fd = (log_gamma(x + h).unwrap() - log_gamma(x - h).unwrap()) / (2.0 * h);
            let dg = digamma(x).unwrap();
            assert!(
                (fd - dg).abs() <= 1e-6 * dg.abs().max(1.0),
                "x = {x}: fd = {fd}, digamma = {dg}"
            );
            x *= 1.4;
        }
    }

    #[test]
    fn trigamma_values() {
        let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert_relative_eq!(trigamma(1.0).unwrap(), pi2_6, epsilon = 1e-13);
        assert_relative_eq!(trigamma(2.0).unwrap(), pi2_6 - 1.0, epsilon = 1e-13);
        // central-difference oracle on digamma, step 1e-5
        let h = 1e-5;
        let fd = (digamma(0.95 + h).unwrap() - digamma(0.95 - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(trigamma(0.95).unwrap(), fd, max_relative = 1e-8);
        assert_relative_eq!(trigamma(0.95).unwrap(), 1.7738094443762760, epsilon = 1e-12);
        assert!(trigamma(0.0).is_err());
    }

    #[test]
    fn trigamma_recurrence_and_positivity() {
        let mut x = 0.1;
        while x < 60.0 {
            let t = trigamma(x).unwrap();
            assert!(t > 0.0);
            let lhs = trigamma(x + 1.0).unwrap();
            let rhs = t - 1.0 / (x * x);
            assert!((lhs - rhs).abs() <= 1e-12 * t.max(1.0), "x = {x}");
            x *= 1.33;
        }
    }

    #[test]
    fn trigamma_is_digamma_derivative() {
        let h = 1e-6;
        let mut x = 0.1;
        while x < 50.0 {
            let fd = (digamma(x + h).unwrap() - digamma(x - h).unwrap()) / (2.0 * h);
            let tg = trigamma(x).unwrap();
            assert!((fd - tg).abs() <= 1e-6 * tg.max(1.0), "x = {x}");
            x *= 1.4;
        }
    }

    #[test]
    fn higher_polygamma_match_finite_differences() {
        let h = 1e-5;
        for x in [0.1, 0.45, 0.95, 2.0, 4.0, 7.5, 20.0] {
            let fd2 = (trigamma_raw(x + h) - trigamma_raw(x - h)) / (2.0 * h);
            assert!(
                (tetragamma_raw(x) - fd2).abs() <= 1e-6 * fd2.abs().max(1.0),
                "tetragamma at {x}"
            );
            let fd3 = (tetragamma_raw(x + h) - tetragamma_raw(x - h)) / (2.0 * h);
            assert!(
                (pentagamma_raw(x) - fd3).abs() <= 1e-5 * fd3.abs().max(1.0),
                "pentagamma at {x}"
            );
        }
    }

    #[test]
    fn reg_inc_beta_values() {
        assert_relative_eq!(reg_inc_beta(2.0, 2.0, 0.5).unwrap(), 0.5, epsilon = 1e-14);
        assert_eq!(reg_inc_beta(1.3, 0.7, 1.0).unwrap(), 1.0);
        assert_eq!(reg_inc_beta(1.3, 0.7, 0.0).unwrap(), 0.0);
        // adaptive quadrature of the beta density
        assert_relative_eq!(
            reg_inc_beta(0.95, 0.45, 0.3).unwrap(),
            0.16061915779933727,
            max_relative = 1e-12
        );
        assert!(reg_inc_beta(0.0, 1.0, 0.5).is_err());
        assert!(reg_inc_beta(1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn reg_inc_beta_monotone() {
        let mut prev = 0.0;
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let v = reg_inc_beta(0.6, 2.3, x).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    proptest! {
        #[test]
        fn reflection_identity(
            a in 0.1f64..10.0,
            b in 0.1f64..10.0,
            x in 0.0f64..1.0,
        ) {
            let lhs = reg_inc_beta(a, b, x).unwrap();
            let rhs = 1.0 - reg_inc_beta(b, a, 1.0 - x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }

        #[test]
        fn inv_beta_roundtrip(
            a in 0.1f64..10.0,
            b in 0.1f64..10.0,
            x in 0.01f64..0.99,
        ) {
            let p = reg_inc_beta(a, b, x).unwrap();
            let back = inv_reg_inc_beta(a, b, p).unwrap();
            // rounding p to f64 already moves the true quantile by
            // ~eps/pdf(x); allow that conditioning on top of the 1e-9 target
            let ln_pdf = (a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - ln_beta_raw(a, b);
            let quantization = 4.0 * f64::EPSILON * (-ln_pdf).exp();
            prop_assert!(
                (back - x).abs() <= 1e-9 + quantization,
                "a={a} b={b} x={x} back={back}"
            );
        }
    }

    #[test]
    fn inv_reg_inc_beta_values() {
        assert_relative_eq!(
            inv_reg_inc_beta(2.0, 2.0, 0.5).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        // bisection oracle on reg_inc_beta
        assert_relative_eq!(
            inv_reg_inc_beta(0.95, 0.45, 0.25).unwrap(),
            0.45002924483721600,
            max_relative = 1e-10
        );
        assert_eq!(inv_reg_inc_beta(1.2, 3.4, 0.0).unwrap(), 0.0);
        assert_eq!(inv_reg_inc_beta(1.2, 3.4, 1.0).unwrap(), 1.0);
        // forward residual meets the stated tolerance
        for &(a, b, p) in &[(0.2, 0.3, 0.12), (5.0, 0.4, 0.8), (3.0, 7.0, 0.5)] {
            let x = inv_reg_inc_beta(a, b, p).unwrap();
            assert!((reg_inc_beta(a, b, x).unwrap() - p).abs() <= 1e-10);
        }
    }

    #[test]
    fn inv_beta_extreme_tails() {
        // lower tail stays representable arbitrarily deep; the upper probe
        // stops at 1e-6 because quantiles closer to 1 than one ulp cannot be
        // expressed in x-space at all
        for &(a, b) in &[(0.95, 0.45), (5.0, 0.5), (1.05, 10.0)] {
            for &p in &[6.2e-16, 1e-10, 1e-6, 1.0 - 1e-6] {
                let x = inv_reg_inc_beta(a, b, p).unwrap();
                assert!((0.0..=1.0).contains(&x));
                let back = reg_inc_beta(a, b, x).unwrap();
                assert!((back - p).abs() <= 1e-10, "a={a} b={b} p={p}: back={back}");
            }
        }
    }
}
