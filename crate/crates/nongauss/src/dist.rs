//! Standardized marginal laws.
//!
//! Each distribution here is a location-scale family member constrained to
//! mean 0 and variance 1, exposing density, CDF, quantile, density derivative
//! and standardized cumulants. The constraint fixes location m and scale s
//! from the shape parameters:
//!
//! - Student t:        m = 0,                 s = sqrt((nu-2)/nu), nu > 2
//! - asym. Laplace:    m = -s (1-k^2)/k,      s = sqrt(k^2/(1+k^4)), k > 0
//! - EGB2:             m = (psi(q)-psi(p)) s, s = (psi'(p)+psi'(q))^(-1/2)
//!
//! Values are immutable after construction (including the optional quantile
//! interpolation table) and safe to share across threads.

use std::fmt;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{
    self, digamma_raw, inv_reg_inc_beta_raw, ln_beta_raw, log_gamma_raw, norm_cdf_raw,
    norm_quantile_raw, pentagamma_raw, reg_inc_beta_raw, tetragamma_raw, trigamma_raw,
};

/// Distribution family plus shape parameters, as selected in configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Gaussian,
    StudentT { nu: f64 },
    AsymmetricLaplace { kappa: f64 },
    Egb2 { p: f64, q: f64 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gaussian => write!(f, "gaussian{{}}"),
            Family::StudentT { nu } => write!(f, "student_t{{nu={nu}}}"),
            Family::AsymmetricLaplace { kappa } => write!(f, "asym_laplace{{kappa={kappa}}}"),
            Family::Egb2 { p, q } => write!(f, "egb2{{p={p},q={q}}}"),
        }
    }
}

/// Number of knots in the optional quantile acceleration table.
const TABLE_KNOTS: usize = 4096;
/// The table spans u in [1e-6, 1 - 1e-6]; outside it evaluation is exact.
const TABLE_U_EDGE: f64 = 1e-6;

/// Monotone cubic (Fritsch–Butland) interpolant of F^{-1}(Phi(z)) on a
/// uniform z grid. Tabulating the composite in the Gaussian z domain keeps
/// the interpolated function smooth even for heavy-tailed laws.
#[derive(Debug, Clone)]
struct QuantileTable {
    z_min: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl QuantileTable {
    fn build(d: &StandardizedDistribution) -> Result<Self> {
        let z_max = norm_quantile_raw(1.0 - TABLE_U_EDGE);
        let z_min = -z_max;
        let step = (z_max - z_min) / (TABLE_KNOTS - 1) as f64;
        let mut values = Vec::with_capacity(TABLE_KNOTS);
        for i in 0..TABLE_KNOTS {
            let z = z_min + i as f64 * step;
            values.push(d.quantile_from_gaussian_exact(z)?);
        }
        // secants, then monotone-limited slopes
        let n = TABLE_KNOTS;
        let sec: Vec<f64> = (0..n - 1)
            .map(|i| (values[i + 1] - values[i]) / step)
            .collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = sec[0];
        slopes[n - 1] = sec[n - 2];
        for i in 1..n - 1 {
            let (a, b) = (sec[i - 1], sec[i]);
            slopes[i] = if a * b > 0.0 {
                2.0 * a * b / (a + b)
            } else {
                0.0
            };
        }
        Ok(QuantileTable {
            z_min,
            step,
            values,
            slopes,
        })
    }

    #[inline]
    fn covers(&self, z: f64) -> bool {
        z >= self.z_min && z <= -self.z_min
    }

    #[inline]
    fn eval(&self, z: f64) -> f64 {
        let pos = (z - self.z_min) / self.step;
        let i = (pos as usize).min(TABLE_KNOTS - 2);
        let t = pos - i as f64;
        let h = self.step;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i], self.slopes[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + m0 * h * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + m1 * h * (t3 - t2)
    }
}

/// An absolutely continuous law with mean 0 and variance 1.
#[derive(Debug, Clone)]
pub struct StandardizedDistribution {
    family: Family,
    location: f64,
    scale: f64,
    skew_cumulant: f64,
    kurt_cumulant: f64,
    /// log of the kernel density normalizer
    ln_norm: f64,
    table: Option<QuantileTable>,
}

impl StandardizedDistribution {
    /// The Gaussian member: the transform degenerates to the identity.
    pub fn gaussian() -> Self {
        StandardizedDistribution {
            family: Family::Gaussian,
            location: 0.0,
            scale: 1.0,
            skew_cumulant: 0.0,
            kurt_cumulant: 0.0,
            ln_norm: -specfun::LN_SQRT_2PI,
            table: None,
        }
    }

    /// Student t with `nu` degrees of freedom, standardized by
    /// s = sqrt((nu-2)/nu). Requires nu > 2 for a finite variance.
    pub fn student_t(nu: f64) -> Result<Self> {
        if !(nu > 2.0) || !nu.is_finite() {
            return Err(Error::InfiniteVariance(format!(
                "student_t requires nu > 2, got nu = {nu}"
            )));
        }
        let scale = ((nu - 2.0) / nu).sqrt();
        let ln_norm = log_gamma_raw((nu + 1.0) / 2.0)
            - log_gamma_raw(nu / 2.0)
            - 0.5 * (nu * std::f64::consts::PI).ln();
        let skew_cumulant = if nu > 3.0 { 0.0 } else { f64::INFINITY };
        let kurt_cumulant = if nu > 4.0 {
            6.0 / (nu - 4.0)
        } else {
            f64::INFINITY
        };
        Ok(StandardizedDistribution {
            family: Family::StudentT { nu },
            location: 0.0,
            scale,
            skew_cumulant,
            kurt_cumulant,
            ln_norm,
            table: None,
        })
    }

    /// Asymmetric Laplace with skew parameter `kappa`; the density decays at
    /// rate kappa/s above the mode and 1/(s kappa) below it.
    pub fn asymmetric_laplace(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::domain(format!(
                "asymmetric_laplace requires kappa > 0, got kappa = {kappa}"
            )));
        }
        let k2 = kappa * kappa;
        let scale = (k2 / (1.0 + k2 * k2)).sqrt();
        let location = -scale * (1.0 - k2) / kappa;
        // cumulants of the difference of the two exponential branches
        let up = scale / kappa;
        let down = scale * kappa;
        let skew_cumulant = 2.0 * (up.powi(3) - down.powi(3));
        let kurt_cumulant = 6.0 * (up.powi(4) + down.powi(4));
        let ln_norm = (kappa / (scale * (1.0 + k2))).ln();
        Ok(StandardizedDistribution {
            family: Family::AsymmetricLaplace { kappa },
            location,
            scale,
            skew_cumulant,
            kurt_cumulant,
            ln_norm,
            table: None,
        })
    }

    /// Exponentialized Generalized Beta of the Second Kind with shape
    /// parameters `p`, `q`; skewness follows the sign of p - q and smaller
    /// shapes give heavier tails.
    pub fn egb2(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0) || !(q > 0.0) || !p.is_finite() || !q.is_finite() {
            return Err(Error::domain(format!(
                "egb2 requires p > 0 and q > 0, got p = {p}, q = {q}"
            )));
        }
        let scale = 1.0 / (trigamma_raw(p) + trigamma_raw(q)).sqrt();
        let location = (digamma_raw(q) - digamma_raw(p)) * scale;
        let skew_cumulant = (tetragamma_raw(p) - tetragamma_raw(q)) * scale.powi(3);
        let kurt_cumulant = (pentagamma_raw(p) + pentagamma_raw(q)) * scale.powi(4);
        Ok(StandardizedDistribution {
            family: Family::Egb2 { p, q },
            location,
            scale,
            skew_cumulant,
            kurt_cumulant,
            ln_norm: -ln_beta_raw(p, q),
            table: None,
        })
    }

    /// Build from a [`Family`] descriptor.
    pub fn from_family(family: Family) -> Result<Self> {
        match family {
            Family::Gaussian => Ok(Self::gaussian()),
            Family::StudentT { nu } => Self::student_t(nu),
            Family::AsymmetricLaplace { kappa } => Self::asymmetric_laplace(kappa),
            Family::Egb2 { p, q } => Self::egb2(p, q),
        }
    }

    /// Attach the 4096-knot monotone-cubic quantile table covering
    /// u in [1e-6, 1-1e-6]; hot-loop transform evaluations then interpolate
    /// instead of inverting the CDF, falling back to exact evaluation outside
    /// the covered range. No-op for the Gaussian member.
    pub fn with_quantile_table(mut self) -> Result<Self> {
        if self.family != Family::Gaussian && self.table.is_none() {
            self.table = Some(QuantileTable::build(&self)?);
        }
        Ok(self)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Location parameter m fixed by the standardization constraint.
    pub fn location(&self) -> f64 {
        self.location
    }

    /// Scale parameter s fixed by the standardization constraint.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn has_quantile_table(&self) -> bool {
        self.table.is_some()
    }

    // -- kernel (shape family member with location 0, scale 1) -------------

    fn kernel_log_pdf(&self, w: f64) -> f64 {
        match self.family {
            Family::Gaussian => self.ln_norm - 0.5 * w * w,
            Family::StudentT { nu } => self.ln_norm - 0.5 * (nu + 1.0) * (w * w / nu).ln_1p(),
            Family::AsymmetricLaplace { kappa } => {
                // ln_norm already includes the 1/s factor of the full density
                if w >= 0.0 {
                    self.ln_norm + self.scale.ln() - kappa * w
                } else {
                    self.ln_norm + self.scale.ln() + w / kappa
                }
            }
            Family::Egb2 { p, q } => {
                // p w - (p+q) ln(1+e^w), evaluated on the stable side
                let softplus = if w > 0.0 {
                    w + (-w).exp().ln_1p()
                } else {
                    w.exp().ln_1p()
                };
                self.ln_norm + p * w - (p + q) * softplus
            }
        }
    }

    /// d/dw of the kernel log density. Errors at the asymmetric-Laplace kink.
    fn kernel_dlog_pdf(&self, w: f64) -> Result<f64> {
        Ok(match self.family {
            Family::Gaussian => -w,
            Family::StudentT { nu } => -(nu + 1.0) * w / (nu + w * w),
            Family::AsymmetricLaplace { kappa } => {
                if w > 0.0 {
                    -kappa
                } else if w < 0.0 {
                    1.0 / kappa
                } else {
                    return Err(Error::NonDifferentiable(self.location));
                }
            }
            Family::Egb2 { p, q } => {
                let sigmoid = 1.0 / (1.0 + (-w).exp());
                p - (p + q) * sigmoid
            }
        })
    }

    fn kernel_cdf(&self, w: f64) -> Result<f64> {
        Ok(match self.family {
            Family::Gaussian => norm_cdf_raw(w),
            Family::StudentT { nu } => {
                let xb = nu / (nu + w * w);
                let half = 0.5 * reg_inc_beta_raw(0.5 * nu, 0.5, xb)?;
                if w <= 0.0 {
                    half
                } else {
                    1.0 - half
                }
            }
            Family::AsymmetricLaplace { kappa } => {
                let k2 = kappa * kappa;
                if w < 0.0 {
                    k2 / (1.0 + k2) * (w / kappa).exp()
                } else {
                    1.0 - (-kappa * w).exp() / (1.0 + k2)
                }
            }
            Family::Egb2 { p, q } => {
                if w <= 0.0 {
                    let u = 1.0 / (1.0 + (-w).exp());
                    reg_inc_beta_raw(p, q, u)?
                } else {
                    // complement through the swapped arguments for tail accuracy
                    let ubar = 1.0 / (1.0 + w.exp());
                    1.0 - reg_inc_beta_raw(q, p, ubar)?
                }
            }
        })
    }

    /// Kernel quantile, accurate in the lower tail.
    fn kernel_quantile(&self, u: f64) -> Result<f64> {
        Ok(match self.family {
            Family::Gaussian => norm_quantile_raw(u),
            Family::StudentT { nu } => {
                let tail = 2.0 * u.min(1.0 - u);
                let y = inv_reg_inc_beta_raw(0.5 * nu, 0.5, tail)?;
                let w = (nu * (1.0 - y) / y).sqrt();
                if u < 0.5 {
                    -w
                } else if u > 0.5 {
                    w
                } else {
                    0.0
                }
            }
            Family::AsymmetricLaplace { kappa } => {
                let k2 = kappa * kappa;
                let u_mode = k2 / (1.0 + k2);
                if u < u_mode {
                    kappa * (u / u_mode).ln()
                } else {
                    -(1.0 / kappa) * ((1.0 - u) * (1.0 + k2)).ln()
                }
            }
            Family::Egb2 { p, q } => {
                if u <= 0.5 {
                    let v = inv_reg_inc_beta_raw(p, q, u)?;
                    v.ln() - (-v).ln_1p()
                } else {
                    let vbar = inv_reg_inc_beta_raw(q, p, 1.0 - u)?;
                    (-vbar).ln_1p() - vbar.ln()
                }
            }
        })
    }

    /// Kernel quantile at 1 - qbar, accurate in the upper tail.
    fn kernel_quantile_upper(&self, qbar: f64) -> Result<f64> {
        Ok(match self.family {
            Family::Gaussian => -norm_quantile_raw(qbar),
            Family::StudentT { nu } => {
                if qbar >= 0.5 {
                    return self.kernel_quantile(1.0 - qbar);
                }
                let y = inv_reg_inc_beta_raw(0.5 * nu, 0.5, 2.0 * qbar)?;
                (nu * (1.0 - y) / y).sqrt()
            }
            Family::AsymmetricLaplace { kappa } => {
                let k2 = kappa * kappa;
                if qbar <= 1.0 / (1.0 + k2) {
                    -(1.0 / kappa) * (qbar * (1.0 + k2)).ln()
                } else {
                    return self.kernel_quantile(1.0 - qbar);
                }
            }
            Family::Egb2 { p, q } => {
                if qbar >= 0.5 {
                    return self.kernel_quantile(1.0 - qbar);
                }
                let vbar = inv_reg_inc_beta_raw(q, p, qbar)?;
                (-vbar).ln_1p() - vbar.ln()
            }
        })
    }

    // -- public surface ------------------------------------------------------

    /// Density f(x).
    pub fn pdf(&self, x: f64) -> f64 {
        self.log_pdf(x).exp()
    }

    /// Log density; -inf where the density underflows.
    pub fn log_pdf(&self, x: f64) -> f64 {
        let w = (x - self.location) / self.scale;
        self.kernel_log_pdf(w) - self.scale.ln()
    }

    /// Distribution function F(x).
    pub fn cdf(&self, x: f64) -> f64 {
        let w = (x - self.location) / self.scale;
        // the continued fraction converges for every interior argument the
        // kernels produce; domain errors cannot happen here
        self.kernel_cdf(w).expect("cdf evaluation")
    }

    /// Quantile F^{-1}(u) for u strictly inside (0, 1). Always evaluates the
    /// exact inverse; the interpolation table only accelerates
    /// [`Self::quantile_from_gaussian`].
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) || u.is_nan() {
            return Err(Error::domain(format!("quantile: u = {u} outside [0, 1]")));
        }
        if u == 0.0 || u == 1.0 {
            return Err(Error::InfiniteQuantile(u));
        }
        Ok(self.location + self.scale * self.kernel_quantile(u)?)
    }

    /// Quantile at 1 - qbar, keeping full relative accuracy for tiny upper
    /// tail probabilities.
    pub fn quantile_upper(&self, qbar: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&qbar) || qbar.is_nan() {
            return Err(Error::domain(format!(
                "quantile_upper: qbar = {qbar} outside [0, 1]"
            )));
        }
        if qbar == 0.0 || qbar == 1.0 {
            return Err(Error::InfiniteQuantile(1.0 - qbar));
        }
        Ok(self.location + self.scale * self.kernel_quantile_upper(qbar)?)
    }

    /// F^{-1}(Phi(z)) — the composed map at the heart of the transform.
    /// Uses the interpolation table where present and covering, the exact
    /// tail-aware inversion otherwise. `z` must satisfy
    /// |z| <= [`specfun::GAUSSIAN_SATURATION_Z`].
    pub fn quantile_from_gaussian(&self, z: f64) -> Result<f64> {
        if let Family::Gaussian = self.family {
            // composition of the numeric Phi and its numeric inverse
            return self.quantile_from_gaussian_exact(z);
        }
        if let Some(table) = &self.table {
            if table.covers(z) {
                return Ok(table.eval(z));
            }
        }
        self.quantile_from_gaussian_exact(z)
    }

    fn quantile_from_gaussian_exact(&self, z: f64) -> Result<f64> {
        if z <= 0.0 {
            let u = norm_cdf_raw(z);
            if u <= 0.0 {
                return Err(Error::TailSaturation(z));
            }
            self.quantile(u)
        } else {
            let qbar = norm_cdf_raw(-z);
            if qbar <= 0.0 {
                return Err(Error::TailSaturation(z));
            }
            self.quantile_upper(qbar)
        }
    }

    /// Density derivative f'(x). Errors at the asymmetric-Laplace kink x = m.
    pub fn pdf_prime(&self, x: f64) -> Result<f64> {
        Ok(self.pdf(x) * self.dlog_pdf(x)?)
    }

    /// Logarithmic density derivative f'(x)/f(x); the numerically stable form
    /// used inside the drift correction.
    pub fn dlog_pdf(&self, x: f64) -> Result<f64> {
        let w = (x - self.location) / self.scale;
        Ok(self.kernel_dlog_pdf(w)? / self.scale)
    }

    /// Standardized third and fourth cumulants (skewness, excess kurtosis).
    /// Nonexistent moments are flagged as infinity.
    pub fn cumulants(&self) -> (f64, f64) {
        (self.skew_cumulant, self.kurt_cumulant)
    }

    /// Mean and variance by adaptive quadrature over the support; verifies
    /// the standardization constraint numerically.
    pub fn standardization_check(&self) -> Result<(f64, f64)> {
        let lf = |x: f64| self.log_pdf(x);
        let mean = quad::real_line_moment(&lf, 1, 1e-10)?;
        let second = quad::real_line_moment(&lf, 2, 1e-10)?;
        Ok((mean, second - mean * mean))
    }

    /// Internal fast path for the modulator: phi(z) / f(F^{-1}(Phi(z))) given
    /// the already transformed point.
    pub(crate) fn modulator_at(&self, z: f64, transformed: f64) -> Result<f64> {
        let lf = self.log_pdf(transformed);
        if !lf.is_finite() {
            return Err(Error::TailSaturation(z));
        }
        Ok((specfun::ln_phi_raw(z) - lf).exp())
    }

    #[cfg(test)]
    pub(crate) fn with_scale_for_tests(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }
}

/// All six parameter sets exercised in the simulation study, in display
/// order: t(10), t(2.1), AL(1.5), AL(9), EGB2(0.95, 0.45), EGB2(4, 0.1).
pub fn showcase_families() -> [Family; 6] {
    [
        Family::StudentT { nu: 10.0 },
        Family::StudentT { nu: 2.1 },
        Family::AsymmetricLaplace { kappa: 1.5 },
        Family::AsymmetricLaplace { kappa: 9.0 },
        Family::Egb2 { p: 0.95, q: 0.45 },
        Family::Egb2 { p: 4.0, q: 0.1 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn all_test_dists() -> Vec<StandardizedDistribution> {
        let mut v = vec![StandardizedDistribution::gaussian()];
        v.extend(
            showcase_families()
                .iter()
                .map(|f| StandardizedDistribution::from_family(*f).unwrap()),
        );
        v
    }

    #[test]
    fn gaussian_member() {
        let d = StandardizedDistribution::gaussian();
        assert_eq!(d.quantile(0.5).unwrap(), 0.0);
        assert_eq!(d.cumulants(), (0.0, 0.0));
        assert_relative_eq!(d.pdf(0.0), 0.3989422804014327, max_relative = 1e-14);
        assert_relative_eq!(
            d.quantile(0.975).unwrap(),
            1.9599639845400545,
            epsilon = 1e-12
        );
    }

    #[test]
    fn student_t_constraints() {
        // Table-1 rows at full precision
        let d10 = StandardizedDistribution::student_t(10.0).unwrap();
        assert_eq!(d10.location(), 0.0);
        assert_relative_eq!(d10.scale(), 0.8944271909999159, epsilon = 1e-15);
        let d21 = StandardizedDistribution::student_t(2.1).unwrap();
        assert_relative_eq!(d21.scale(), 0.21821789023599236, epsilon = 1e-15);
        assert!(matches!(
            StandardizedDistribution::student_t(2.0),
            Err(Error::InfiniteVariance(_))
        ));
        assert!(StandardizedDistribution::student_t(1.5).is_err());
    }

    #[test]
    fn student_t_pdf_and_cumulants() {
        let d = StandardizedDistribution::student_t(10.0).unwrap();
        // scale-transformed central t density, cross-checked by quadrature
        assert_relative_eq!(d.pdf(0.0), 0.4350363985815673, max_relative = 1e-12);
        let (k3, k4) = d.cumulants();
        assert_eq!(k3, 0.0);
        assert_relative_eq!(k4, 1.0, epsilon = 1e-14);
        // nonexistent moments are flagged infinite
        let d21 = StandardizedDistribution::student_t(2.1).unwrap();
        assert!(d21.cumulants().0.is_infinite());
        assert!(d21.cumulants().1.is_infinite());
        let d35 = StandardizedDistribution::student_t(3.5).unwrap();
        assert_eq!(d35.cumulants().0, 0.0);
        assert!(d35.cumulants().1.is_infinite());
    }

    #[test]
    fn student_t_cdf_quantile_oracles() {
        let d = StandardizedDistribution::student_t(10.0).unwrap();
        assert_relative_eq!(d.cdf(1.0), 0.8551541939744958, epsilon = 1e-13);
        assert_relative_eq!(
            d.quantile(0.975).unwrap(),
            1.9929079745398611,
            epsilon = 1e-11
        );
        assert_eq!(d.quantile(0.5).unwrap(), 0.0);
    }

    #[test]
    fn asymmetric_laplace_constraints() {
        let d = StandardizedDistribution::asymmetric_laplace(1.5).unwrap();
        assert_relative_eq!(d.location(), 0.5076730825668095, epsilon = 1e-14);
        assert_relative_eq!(d.scale(), 0.6092076990801714, epsilon = 1e-14);
        let d9 = StandardizedDistribution::asymmetric_laplace(9.0).unwrap();
        assert_relative_eq!(d9.location(), 0.9875790625335513, epsilon = 1e-14);
        assert_relative_eq!(d9.scale(), 0.11110264453502452, epsilon = 1e-14);
        // symmetric case
        let d1 = StandardizedDistribution::asymmetric_laplace(1.0).unwrap();
        assert_eq!(d1.location(), 0.0);
        assert_relative_eq!(d1.scale(), (0.5f64).sqrt(), epsilon = 1e-15);
        assert!(StandardizedDistribution::asymmetric_laplace(0.0).is_err());
        assert!(StandardizedDistribution::asymmetric_laplace(-2.0).is_err());
    }

    #[test]
    fn asymmetric_laplace_density_continuity() {
        let d = StandardizedDistribution::asymmetric_laplace(1.5).unwrap();
        let m = d.location();
        let s = d.scale();
        let expect = 1.5 / (s * (1.0 + 2.25));
        assert_relative_eq!(d.pdf(m), expect, max_relative = 1e-12);
        let eps = 1e-12;
        assert_relative_eq!(d.pdf(m - eps), d.pdf(m + eps), max_relative = 1e-9);
    }

    #[test]
    fn asymmetric_laplace_cdf_quantile() {
        let d = StandardizedDistribution::asymmetric_laplace(1.5).unwrap();
        // closed-form integral of the lower exponential branch at the mode
        assert_relative_eq!(d.cdf(d.location()), 2.25 / 3.25, epsilon = 1e-14);
        // closed-form median, verified by bisection on the CDF
        assert_relative_eq!(
            d.quantile(0.5).unwrap(),
            0.21029833486992071,
            epsilon = 1e-12
        );
    }

    #[test]
    fn asymmetric_laplace_kink() {
        let d = StandardizedDistribution::asymmetric_laplace(1.5).unwrap();
        assert!(matches!(
            d.pdf_prime(d.location()),
            Err(Error::NonDifferentiable(_))
        ));
        assert!(d.pdf_prime(d.location() + 1e-9).is_ok());
    }

    #[test]
    fn egb2_constraints() {
        let d = StandardizedDistribution::egb2(0.95, 0.45).unwrap();
        // full-precision constraint output; reference values round to (-0.566, 0.361)
        assert_relative_eq!(d.location(), -0.5664856091553932, epsilon = 1e-12);
        assert_relative_eq!(d.scale(), 0.3606054753848654, epsilon = 1e-12);
        assert!((d.location() - -0.566).abs() < 0.02);
        assert!((d.scale() - 0.361).abs() < 0.02);
        let d2 = StandardizedDistribution::egb2(4.0, 0.1).unwrap();
        assert_relative_eq!(d2.location(), -1.1580866997980850, epsilon = 1e-12);
        assert_relative_eq!(d2.scale(), 0.09915233997683271, epsilon = 1e-12);
        // p = q is symmetric
        let sym = StandardizedDistribution::egb2(1.3, 1.3).unwrap();
        assert!(sym.location().abs() < 1e-15);
        assert!(sym.cumulants().0.abs() < 1e-15);
        assert!(StandardizedDistribution::egb2(0.0, 1.0).is_err());
        assert!(StandardizedDistribution::egb2(1.0, -1.0).is_err());
    }

    #[test]
    fn egb2_oracles() {
        let d = StandardizedDistribution::egb2(0.95, 0.45).unwrap();
        assert_relative_eq!(d.cdf(0.2), 0.6446641352149023, epsilon = 1e-12);
        assert_relative_eq!(
            d.quantile(0.3).unwrap(),
            -0.5284731312065251,
            epsilon = 1e-10
        );
        assert_relative_eq!(d.pdf(0.2), 0.3976968991160875, max_relative = 1e-12);
        assert_relative_eq!(
            d.pdf_prime(0.2).unwrap(),
            -0.3316370958314149,
            max_relative = 1e-11
        );
        let (k3, k4) = d.cumulants();
        assert_relative_eq!(k3, 0.9420116298584479, epsilon = 1e-11);
        assert_relative_eq!(k4, 2.6349006450934660, epsilon = 1e-11);
    }

    #[test]
    fn skew_directions_follow_the_density_formulas() {
        // with the printed density, kappa > 1 puts the long tail below the
        // mode, so the standardized third cumulant is negative
        let al = StandardizedDistribution::asymmetric_laplace(1.5).unwrap();
        assert!(al.cumulants().0 < 0.0);
        assert_relative_eq!(al.cumulants().0, -1.3921756697192921, epsilon = 1e-12);
        assert_relative_eq!(al.cumulants().1, 4.3471144648740568, epsilon = 1e-12);
        let al_inv = StandardizedDistribution::asymmetric_laplace(1.0 / 1.5).unwrap();
        assert!(al_inv.cumulants().0 > 0.0);
        assert_relative_eq!(al_inv.cumulants().0, -al.cumulants().0, epsilon = 1e-12);
        // EGB2 skews positive when p > q
        let e = StandardizedDistribution::egb2(4.0, 0.1).unwrap();
        assert!(e.cumulants().0 > 0.0);
        let e_neg = StandardizedDistribution::egb2(0.1, 4.0).unwrap();
        assert!(e_neg.cumulants().0 < 0.0);
    }

    #[test]
    fn cumulants_match_quadrature() {
        // independent oracle: adaptive quadrature of x^3 f and x^4 f
        for fam in [
            Family::AsymmetricLaplace { kappa: 1.5 },
            Family::AsymmetricLaplace { kappa: 9.0 },
            Family::Egb2 { p: 0.95, q: 0.45 },
            Family::Egb2 { p: 4.0, q: 0.1 },
            Family::StudentT { nu: 10.0 },
        ] {
            let d = StandardizedDistribution::from_family(fam).unwrap();
            let lf = |x: f64| d.log_pdf(x);
            let m3 = quad::real_line_moment(&lf, 3, 1e-10).unwrap();
            let m4 = quad::real_line_moment(&lf, 4, 1e-10).unwrap();
            let (k3, k4) = d.cumulants();
            assert!((k3 - m3).abs() < 1e-5, "{fam}: k3 = {k3}, quad = {m3}");
            assert!(
                (k4 - (m4 - 3.0)).abs() < 1e-5,
                "{fam}: k4 = {k4}, quad = {}",
                m4 - 3.0
            );
        }
    }

    #[test]
    fn standardization_within_1e6() {
        for d in all_test_dists() {
            let (mean, var) = d.standardization_check().unwrap();
            assert!(mean.abs() <= 1e-6, "{}: mean = {mean}", d.family());
            assert!((var - 1.0).abs() <= 1e-6, "{}: var = {var}", d.family());
        }
    }

    #[test]
    fn standardization_with_rounded_table_values() {
        // AL kappa=9 with the rounded three-decimal (m, s): the residual
        // moments are set by the rounding itself, about 1.4e-3 in the mean
        // and 1.9e-3 in the variance
        let mut d = StandardizedDistribution::asymmetric_laplace(9.0).unwrap();
        d.location = 0.988;
        d.scale = 0.111;
        d.ln_norm = (9.0f64 / (0.111 * 82.0)).ln();
        let (mean, var) = d.standardization_check().unwrap();
        assert!(mean.abs() < 2e-3, "mean = {mean}");
        assert!((var - 1.0).abs() < 5e-3, "var = {var}");
    }

    #[test]
    fn pdf_integrates_to_one() {
        for d in all_test_dists() {
            let lf = |x: f64| d.log_pdf(x);
            let mass = quad::real_line_moment(&lf, 0, 1e-10).unwrap();
            assert!((mass - 1.0).abs() <= 1e-8, "{}: mass = {mass}", d.family());
        }
    }

    #[test]
    fn cdf_matches_pdf_by_differences() {
        for d in all_test_dists() {
            for x in [-2.3, -0.7, 0.11, 0.9, 2.6] {
                let h = 1e-6;
                let fd = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h);
                assert!(
                    (fd - d.pdf(x)).abs() <= 1e-6 * d.pdf(x).max(1.0),
                    "{} at x = {x}",
                    d.family()
                );
            }
        }
    }

    #[test]
    fn quantile_roundtrip_named_points() {
        for d in all_test_dists() {
            for u in [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99] {
                let x = d.quantile(u).unwrap();
                assert!(
                    (d.cdf(x) - u).abs() <= 1e-9,
                    "{} at u = {u}: cdf(quantile) = {}",
                    d.family(),
                    d.cdf(x)
                );
            }
            assert!(matches!(d.quantile(0.0), Err(Error::InfiniteQuantile(_))));
            assert!(matches!(d.quantile(1.0), Err(Error::InfiniteQuantile(_))));
        }
    }

    #[test]
    fn pdf_prime_matches_finite_differences() {
        for d in all_test_dists() {
            for x in [-1.9, -0.4, 0.3, 1.2, 2.8] {
                if let Family::AsymmetricLaplace { .. } = d.family() {
                    if (x - d.location()).abs() < 0.05 {
                        continue;
                    }
                }
                let h = 1e-6;
                let fd = (d.pdf(x + h) - d.pdf(x - h)) / (2.0 * h);
                let exact = d.pdf_prime(x).unwrap();
                if exact.abs() > 1e-8 {
                    assert!(
                        ((fd - exact) / exact).abs() <= 1e-5,
                        "{} at x = {x}: fd = {fd}, exact = {exact}",
                        d.family()
                    );
                }
            }
        }
    }

    #[test]
    fn symmetric_families_at_zero() {
        for d in [
            StandardizedDistribution::gaussian(),
            StandardizedDistribution::student_t(10.0).unwrap(),
            StandardizedDistribution::student_t(2.1).unwrap(),
            StandardizedDistribution::asymmetric_laplace(1.0).unwrap(),
        ] {
            assert!((d.cdf(0.0) - 0.5).abs() < 1e-12, "{}", d.family());
        }
        // even densities have zero derivative at the median; for the
        // symmetric Laplace that point is exactly the kink
        assert_eq!(
            StandardizedDistribution::gaussian().pdf_prime(0.0).unwrap(),
            0.0
        );
        assert_eq!(
            StandardizedDistribution::student_t(10.0)
                .unwrap()
                .pdf_prime(0.0)
                .unwrap(),
            0.0
        );
        assert!(StandardizedDistribution::asymmetric_laplace(1.0)
            .unwrap()
            .pdf_prime(0.0)
            .is_err());
    }

    #[test]
    fn gaussian_limits() {
        // deviation bounds fixed by quadrature-oracle measurement of each
        // family's closest-to-Gaussian member
        let phi = StandardizedDistribution::gaussian();
        // the symmetric Laplace is the AL family's closest member and still
        // sits 0.0620 away from Phi in sup norm; the other two genuinely
        // converge
        let cases: [(StandardizedDistribution, f64); 3] = [
            (
                StandardizedDistribution::asymmetric_laplace(1.0).unwrap(),
                0.07,
            ),
            (StandardizedDistribution::student_t(1e6).unwrap(), 1e-5),
            (StandardizedDistribution::egb2(200.0, 200.0).unwrap(), 0.01),
        ];
        for (d, bound) in cases {
            let mut worst = 0.0f64;
            for i in -30..=30 {
                let x = i as f64 / 10.0;
                worst = worst.max((d.cdf(x) - phi.cdf(x)).abs());
            }
            assert!(worst < bound, "{}: max dev = {worst}", d.family());
        }
    }

    #[test]
    fn quantile_table_accuracy() {
        for fam in showcase_families() {
            let exact = StandardizedDistribution::from_family(fam).unwrap();
            let fast = StandardizedDistribution::from_family(fam)
                .unwrap()
                .with_quantile_table()
                .unwrap();
            assert!(fast.has_quantile_table());
            let mut worst = 0.0f64;
            for i in -470..=470 {
                let z = i as f64 / 100.0;
                let a = exact.quantile_from_gaussian(z).unwrap();
                let b = fast.quantile_from_gaussian(z).unwrap();
                worst = worst.max((a - b).abs() / a.abs().max(1.0));
            }
            assert!(worst < 1e-6, "{fam}: table error {worst}");
            // outside the table the exact path is used
            let a = exact.quantile_from_gaussian(6.0).unwrap();
            let b = fast.quantile_from_gaussian(6.0).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn quantile_table_is_monotone() {
        let fast = StandardizedDistribution::egb2(0.95, 0.45)
            .unwrap()
            .with_quantile_table()
            .unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in -4700..=4700 {
            let z = i as f64 / 1000.0;
            let v = fast.quantile_from_gaussian(z).unwrap();
            assert!(v >= prev, "not monotone at z = {z}");
            prev = v;
        }
    }

    proptest! {
        #[test]
        fn roundtrip_random_families(
            u in 0.001f64..0.999,
            nu in 2.05f64..80.0,
            kappa in 0.2f64..8.0,
            p in 0.15f64..6.0,
            q in 0.15f64..6.0,
        ) {
            for d in [
                StandardizedDistribution::student_t(nu).unwrap(),
                StandardizedDistribution::asymmetric_laplace(kappa).unwrap(),
                StandardizedDistribution::egb2(p, q).unwrap(),
            ] {
                let x = d.quantile(u).unwrap();
                prop_assert!((d.cdf(x) - u).abs() <= 1e-9,
                    "{} u={u}: roundtrip {}", d.family(), d.cdf(x));
            }
        }
    }
}
