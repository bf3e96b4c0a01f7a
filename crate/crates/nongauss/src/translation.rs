//! The transform core.
//!
//! `transform` maps a Brownian value b at time t to
//! `sqrt(t) * F^{-1}(Phi(b / sqrt(t)))`, so the process it generates carries
//! the marginal law F(x/sqrt(t)). The remaining operations are the pieces of
//! calculus attached to that map:
//!
//! - the diffusion modulator `h = phi(z) / f(F^{-1}(Phi(z)))`, the derivative
//!   of the transform in its Brownian argument,
//! - the drift correction `r`, the dt term produced by Ito's lemma (zero
//!   exactly when F is Gaussian),
//! - the full triple of partial derivatives of g(y, t),
//! - the Cornish–Fisher deviation polynomial and the cumulant sensitivities.
//!
//! All functions are pure; the t -> 0 limit is outside the domain.

use crate::dist::StandardizedDistribution;
use crate::error::{Error, Result};
use crate::specfun::GAUSSIAN_SATURATION_Z;

/// Simulation-layer clamp for |b/sqrt(t)|: quantiles beyond eight Gaussian
/// standard deviations are numerically meaningless in double precision.
pub const TAIL_CLAMP_Z: f64 = 8.0;

/// Partial derivatives of g(y, t) = sqrt(t) F^{-1}(Phi(y/sqrt(t))).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItoPartials {
    pub dg_dt: f64,
    pub dg_dy: f64,
    pub d2g_dy2: f64,
}

/// Standardized third and fourth cumulants driving the Cornish–Fisher
/// expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornishFisherCoeffs {
    /// kappa_3 (skewness)
    pub skew: f64,
    /// kappa_4 (excess kurtosis)
    pub kurt: f64,
}

impl CornishFisherCoeffs {
    pub fn new(skew: f64, kurt: f64) -> Self {
        CornishFisherCoeffs { skew, kurt }
    }

    pub fn of(d: &StandardizedDistribution) -> Self {
        let (skew, kurt) = d.cumulants();
        CornishFisherCoeffs { skew, kurt }
    }
}

fn check_time(t: f64, what: &str) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("{what}: t = {t} must be positive")));
    }
    Ok(())
}

fn scaled_driver(b: f64, t: f64, what: &str) -> Result<f64> {
    check_time(t, what)?;
    if !b.is_finite() {
        return Err(Error::domain(format!("{what}: non-finite b = {b}")));
    }
    let z = b / t.sqrt();
    if z.abs() > GAUSSIAN_SATURATION_Z {
        return Err(Error::TailSaturation(z));
    }
    Ok(z)
}

/// The pointwise map sqrt(t) * F^{-1}(Phi(b/sqrt(t))).
pub fn transform(b: f64, t: f64, d: &StandardizedDistribution) -> Result<f64> {
    let z = scaled_driver(b, t, "transform")?;
    Ok(t.sqrt() * d.quantile_from_gaussian(z)?)
}

/// Diffusion modulator h(b, t) = phi(z)/f(F^{-1}(Phi(z))) with z = b/sqrt(t);
/// the factor converting Brownian increments into process increments.
/// Identically 1 for the Gaussian member.
pub fn diffusion_modulator(b: f64, t: f64, d: &StandardizedDistribution) -> Result<f64> {
    let z = scaled_driver(b, t, "diffusion_modulator")?;
    modulator_z(z, d)
}

pub(crate) fn modulator_z(z: f64, d: &StandardizedDistribution) -> Result<f64> {
    let q = d.quantile_from_gaussian(z)?;
    d.modulator_at(z, q)
}

/// Drift correction r(b, t): the dt coefficient of the transformed process,
///
/// ```text
/// r = F^{-1}(Phi(z)) / (2 sqrt(t)) - (b/t) h - h^2 (f'/f) / (2 sqrt(t))
/// ```
///
/// with every density ratio evaluated in log space so the f^3 denominator
/// cannot underflow first.
pub fn drift_correction(b: f64, t: f64, d: &StandardizedDistribution) -> Result<f64> {
    let z = scaled_driver(b, t, "drift_correction")?;
    Ok(drift_kernel_z(z, d)? / t.sqrt())
}

/// sqrt(t) * r(b, t) as a function of z alone; the full drift is recovered by
/// dividing by sqrt(t).
pub(crate) fn drift_kernel_z(z: f64, d: &StandardizedDistribution) -> Result<f64> {
    let q = d.quantile_from_gaussian(z)?;
    let h = d.modulator_at(z, q)?;
    let dlog = d.dlog_pdf(q)?;
    Ok(0.5 * q - z * h - 0.5 * h * h * dlog)
}

/// All three closed-form partials of g(y, t) at y = b.
pub fn ito_partials(b: f64, t: f64, d: &StandardizedDistribution) -> Result<ItoPartials> {
    let z = scaled_driver(b, t, "ito_partials")?;
    let sqrt_t = t.sqrt();
    let q = d.quantile_from_gaussian(z)?;
    let h = d.modulator_at(z, q)?;
    let dlog = d.dlog_pdf(q)?;
    Ok(ItoPartials {
        dg_dt: (q - z * h) / (2.0 * sqrt_t),
        dg_dy: h,
        d2g_dy2: -(z * h + h * h * dlog) / sqrt_t,
    })
}

/// Cornish–Fisher deviation polynomial
/// `delta(x) = k3/6 (x^2-1) + k4/24 (x^3-3x) - k3^2/36 (2x^3-5x)`.
pub fn cornish_fisher_deviation(x: f64, c: CornishFisherCoeffs) -> f64 {
    let x2 = x * x;
    let x3 = x2 * x;
    c.skew / 6.0 * (x2 - 1.0) + c.kurt / 24.0 * (x3 - 3.0 * x)
        - c.skew * c.skew / 36.0 * (2.0 * x3 - 5.0 * x)
}

/// Truncated-expansion approximation of the transform:
/// `b + sqrt(t) * delta(b/sqrt(t))`.
pub fn cornish_fisher_transform(b: f64, t: f64, c: CornishFisherCoeffs) -> Result<f64> {
    check_time(t, "cornish_fisher_transform")?;
    let sqrt_t = t.sqrt();
    Ok(b + sqrt_t * cornish_fisher_deviation(b / sqrt_t, c))
}

/// Sensitivity of the transformed value to the third cumulant:
/// `(b^2 - t) / (6 sqrt(t))`.
pub fn skew_sensitivity(b: f64, t: f64) -> Result<f64> {
    check_time(t, "skew_sensitivity")?;
    Ok((b * b - t) / (6.0 * t.sqrt()))
}

/// Sensitivity of the transformed value to the fourth cumulant:
/// `(b^3/t - 3b) / 24`.
pub fn kurtosis_sensitivity(b: f64, t: f64) -> Result<f64> {
    check_time(t, "kurtosis_sensitivity")?;
    Ok((b * b * b / t - 3.0 * b) / 24.0)
}

/// Clamp z = b/sqrt(t) into the simulation range, reporting whether the
/// clamp fired.
#[inline]
pub(crate) fn clamp_z(z: f64) -> (f64, bool) {
    if z > TAIL_CLAMP_Z {
        (TAIL_CLAMP_Z, true)
    } else if z < -TAIL_CLAMP_Z {
        (-TAIL_CLAMP_Z, true)
    } else {
        (z, false)
    }
}
