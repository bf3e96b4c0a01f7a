//! Estimators and hypothesis-style checks.
//!
//! Everything here reports an effect size plus a standard error, or a
//! statistic plus a fixed 1%-level critical value — no p-value machinery, so
//! validation runs produce deterministic pass/fail decisions.

use crate::dist::StandardizedDistribution;
use crate::error::{Error, Result};
use crate::sde::{self, Ensemble, Scheme, TimeGrid};
use crate::translation;

/// Sample moments of a cross-section.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct MomentSummary {
    pub n: usize,
    pub mean: f64,
    /// unbiased sample variance
    pub variance: f64,
    /// adjusted standardized third moment; NaN for degenerate samples
    pub skewness: f64,
    /// adjusted excess kurtosis; NaN for degenerate samples
    pub excess_kurtosis: f64,
    pub std_error_mean: f64,
}

/// Mean and central power sums with compensated (Neumaier) accumulation.
fn central_sums(samples: &[f64]) -> (f64, f64, f64, f64) {
    let n = samples.len() as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in samples {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    let mean = (sum + comp) / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in samples {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    (mean, m2, m3, m4)
}

/// Standard unbiased moment estimators. Needs n >= 4 so the kurtosis
/// adjustment is defined.
pub fn empirical_moments(samples: &[f64]) -> Result<MomentSummary> {
    let n = samples.len();
    if n < 4 {
        return Err(Error::InsufficientData { need: 4, got: n });
    }
    let nf = n as f64;
    let (mean, m2, m3, m4) = central_sums(samples);
    let variance = m2 / (nf - 1.0);
    let (skewness, excess_kurtosis) = if m2 == 0.0 {
        (f64::NAN, f64::NAN)
    } else {
        let g1 = (m3 / nf) / (m2 / nf).powf(1.5);
        let skew = (nf * (nf - 1.0)).sqrt() / (nf - 2.0) * g1;
        let kurt = nf * (nf + 1.0) / ((nf - 1.0) * (nf - 2.0) * (nf - 3.0)) * m4 / variance.powi(2)
            - 3.0 * (nf - 1.0) * (nf - 1.0) / ((nf - 2.0) * (nf - 3.0));
        (skew, kurt)
    };
    Ok(MomentSummary {
        n,
        mean,
        variance,
        skewness,
        excess_kurtosis,
        std_error_mean: (variance / nf).sqrt(),
    })
}

/// Standard error of the sample variance, from the fourth central moment.
pub fn variance_std_error(samples: &[f64]) -> Result<f64> {
    let n = samples.len();
    if n < 4 {
        return Err(Error::InsufficientData { need: 4, got: n });
    }
    let nf = n as f64;
    let (_, m2, _, m4) = central_sums(samples);
    let m2n = m2 / nf;
    let m4n = m4 / nf;
    Ok(((m4n - (nf - 3.0) / (nf - 1.0) * m2n * m2n) / nf)
        .max(0.0)
        .sqrt())
}

/// Kolmogorov–Smirnov comparison outcome at the fixed 1% level.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n: usize,
    pub critical_1pct: f64,
    pub reject: bool,
}

impl KsResult {
    fn new(statistic: f64, n: usize, critical_1pct: f64) -> Self {
        KsResult {
            statistic,
            n,
            critical_1pct,
            reject: statistic > critical_1pct,
        }
    }
}

fn sorted(samples: &[f64]) -> Vec<f64> {
    let mut v = samples.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    v
}

/// One-sample KS statistic of a fixed-time cross-section against the
/// time-scaled marginal F(x / sqrt(t)). Critical value 1.63/sqrt(n).
pub fn ks_one_sample(samples: &[f64], d: &StandardizedDistribution, t: f64) -> Result<KsResult> {
    let n = samples.len();
    if n < 10 {
        return Err(Error::InsufficientData { need: 10, got: n });
    }
    if !(t > 0.0) {
        return Err(Error::domain(format!("ks_one_sample: t = {t} must be > 0")));
    }
    let sqrt_t = t.sqrt();
    let xs = sorted(samples);
    let nf = n as f64;
    let mut stat = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = d.cdf(x / sqrt_t);
        stat = stat.max(f - i as f64 / nf).max((i + 1) as f64 / nf - f);
    }
    Ok(KsResult::new(stat, n, 1.63 / nf.sqrt()))
}

/// Two-sample KS statistic; critical value
/// 1.63 sqrt((n_a + n_b)/(n_a n_b)).
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.len() < 10 || b.len() < 10 {
        return Err(Error::InsufficientData {
            need: 10,
            got: a.len().min(b.len()),
        });
    }
    let xa = sorted(a);
    let xb = sorted(b);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let mut stat = 0.0f64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < xa.len() && j < xb.len() {
        // advance both ECDFs through the next distinct value so ties are
        // measured only after every equal sample is counted
        let v = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] == v {
            i += 1;
        }
        while j < xb.len() && xb[j] == v {
            j += 1;
        }
        stat = stat.max((i as f64 / na - j as f64 / nb).abs());
    }
    let critical = 1.63 * ((na + nb) / (na * nb)).sqrt();
    Ok(KsResult::new(stat, a.len() + b.len(), critical))
}

/// Sample covariance of paired samples with a leave-one-out jackknife
/// standard error.
pub fn covariance_jackknife(u: &[f64], v: &[f64]) -> Result<(f64, f64)> {
    let n = u.len();
    if n != v.len() || n < 4 {
        return Err(Error::InsufficientData {
            need: 4,
            got: n.min(v.len()),
        });
    }
    let nf = n as f64;
    let su: f64 = u.iter().sum();
    let sv: f64 = v.iter().sum();
    let suv: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let cov = (suv - su * sv / nf) / (nf - 1.0);

    let mut loo = Vec::with_capacity(n);
    let m = nf - 1.0;
    for i in 0..n {
        let su_i = su - u[i];
        let sv_i = sv - v[i];
        let suv_i = suv - u[i] * v[i];
        loo.push((suv_i - su_i * sv_i / m) / (m - 1.0));
    }
    let loo_mean = loo.iter().sum::<f64>() / nf;
    let ss: f64 = loo.iter().map(|x| (x - loo_mean) * (x - loo_mean)).sum();
    let se = ((nf - 1.0) / nf * ss).sqrt();
    Ok((cov, se))
}

/// Sample variance of one increment with a jackknife standard error.
pub fn variance_jackknife(x: &[f64]) -> Result<(f64, f64)> {
    covariance_jackknife(x, x)
}

fn increment(e: &Ensemble, from: f64, to: f64) -> Result<Vec<f64>> {
    let grid = &e.spec.grid;
    let i = grid
        .index_of_time(from)
        .ok_or_else(|| Error::domain(format!("time {from} is not on the grid")))?;
    let j = grid
        .index_of_time(to)
        .ok_or_else(|| Error::domain(format!("time {to} is not on the grid")))?;
    Ok(e.paths.iter().map(|p| p.values[j] - p.values[i]).collect())
}

/// Covariance across paths of the increments (s1, s2) and (t1, t2), with a
/// jackknife standard error. Times must lie on the grid and satisfy
/// s1 < s2 <= t1 < t2.
pub fn increment_covariance(
    e: &Ensemble,
    s1: f64,
    s2: f64,
    t1: f64,
    t2: f64,
) -> Result<(f64, f64)> {
    if !(s1 < s2 && s2 <= t1 && t1 < t2) {
        return Err(Error::domain(format!(
            "increment_covariance: need s1 < s2 <= t1 < t2, got ({s1}, {s2}, {t1}, {t2})"
        )));
    }
    let early = increment(e, s1, s2)?;
    let late = increment(e, t1, t2)?;
    covariance_jackknife(&late, &early)
}

/// Variance across paths of the increment (s, t) with a jackknife standard
/// error.
pub fn increment_variance(e: &Ensemble, s: f64, t: f64) -> Result<(f64, f64)> {
    if !(s < t) {
        return Err(Error::domain(format!(
            "increment_variance: need s < t, got ({s}, {t})"
        )));
    }
    let inc = increment(e, s, t)?;
    variance_jackknife(&inc)
}

/// Accumulated-error measurement between the drift-corrected and drift-free
/// walks sharing one Brownian driver.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ErrorGrowthReport {
    pub horizons: Vec<f64>,
    /// root-mean-square of E_T across paths, per horizon
    pub rms_error: Vec<f64>,
    /// rms / sqrt(T log T), per horizon
    pub bound_ratio: Vec<f64>,
}

/// Measure E_T = Z(drift) - Z(no drift) at the standard report horizons
/// {2, 5, 10, 20, 50} intersected with the grid.
pub fn error_growth(
    d: &StandardizedDistribution,
    grid: &TimeGrid,
    n_paths: usize,
    base_seed: u64,
) -> Result<ErrorGrowthReport> {
    let horizons: Vec<f64> = [2.0, 5.0, 10.0, 20.0, 50.0]
        .into_iter()
        .filter(|&t| grid.index_of_time(t).is_some())
        .collect();
    if horizons.is_empty() {
        return Err(Error::domain(
            "error_growth: no report horizon lies on the grid".to_string(),
        ));
    }
    let indices: Vec<usize> = horizons
        .iter()
        .map(|&t| grid.index_of_time(t).expect("filtered above"))
        .collect();

    use rayon::prelude::*;
    let per_path: Vec<Vec<f64>> = (0..n_paths)
        .into_par_iter()
        .map(|i| {
            let seed = base_seed.wrapping_add(i as u64);
            let with = sde::translation_path(d, grid, Scheme::RwDrift, seed)?;
            let without = sde::translation_path_with_driver(
                d,
                grid,
                Scheme::RwNoDrift,
                with.driver.clone().expect("walk paths carry drivers"),
                seed,
            )?;
            Ok(indices
                .iter()
                .map(|&k| with.values[k] - without.values[k])
                .collect())
        })
        .collect::<Result<_>>()?;

    let nf = n_paths as f64;
    let mut rms_error = Vec::with_capacity(indices.len());
    let mut bound_ratio = Vec::with_capacity(indices.len());
    for (j, &t) in horizons.iter().enumerate() {
        let ms = per_path.iter().map(|e| e[j] * e[j]).sum::<f64>() / nf;
        let rms = ms.sqrt();
        rms_error.push(rms);
        bound_ratio.push(rms / (t * t.ln()).sqrt());
    }
    Ok(ErrorGrowthReport {
        horizons,
        rms_error,
        bound_ratio,
    })
}

/// Monte Carlo check of the stochastic-integral isometry: returns
/// (lhs, rhs, std_error) where lhs estimates E[(sum h dB)^2], rhs estimates
/// sum E[h^2] dt over the same ensemble, and std_error is the standard error
/// of the paired difference.
pub fn ito_isometry_check(
    grid: &TimeGrid,
    d: &StandardizedDistribution,
    n_paths: usize,
    base_seed: u64,
) -> Result<(f64, f64, f64)> {
    use rayon::prelude::*;
    let pairs: Vec<(f64, f64)> = (0..n_paths)
        .into_par_iter()
        .map(|i| {
            let seed = base_seed.wrapping_add(i as u64);
            let path = sde::translation_path(d, grid, Scheme::RwNoDrift, seed)?;
            let driver = path.driver.as_ref().expect("walk paths carry drivers");
            let mut integral = 0.0;
            let mut quad = 0.0;
            for k in 0..grid.n_steps() - 1 {
                let t = grid.time(k);
                let (z, _) = translation::clamp_z(driver[k] / t.sqrt());
                let h = translation::modulator_z(z, d)?;
                integral += h * (driver[k + 1] - driver[k]);
                quad += h * h * grid.dt();
            }
            Ok((integral * integral, quad))
        })
        .collect::<Result<_>>()?;

    let nf = n_paths as f64;
    let lhs = pairs.iter().map(|p| p.0).sum::<f64>() / nf;
    let rhs = pairs.iter().map(|p| p.1).sum::<f64>() / nf;
    let diffs: Vec<f64> = pairs.iter().map(|p| p.0 - p.1).collect();
    let dbar = diffs.iter().sum::<f64>() / nf;
    let var = diffs.iter().map(|x| (x - dbar) * (x - dbar)).sum::<f64>() / (nf - 1.0);
    Ok((lhs, rhs, (var / nf).sqrt()))
}

/// A density histogram: bin edges plus per-bin density values.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
}

impl Histogram {
    pub fn bin_mid(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }
}

/// Histogram with densities normalized by total sample count, so the bins
/// integrate to 1 whenever the range covers the data. Default range is
/// [min, max] padded by 1% of the span on each side.
pub fn histogram(samples: &[f64], bins: usize, range: Option<(f64, f64)>) -> Result<Histogram> {
    if bins < 2 {
        return Err(Error::domain(format!("histogram: bins = {bins} < 2")));
    }
    if samples.is_empty() {
        return Err(Error::domain("histogram: no samples".to_string()));
    }
    let (lo, hi) = match range {
        Some(r) => r,
        None => {
            let min = samples.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let pad = 0.01 * (max - min);
            (min - pad, max + pad)
        }
    };
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!(
            "histogram: degenerate range [{lo}, {hi}]"
        )));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &x in samples {
        if x < lo || x > hi {
            continue;
        }
        let mut idx = ((x - lo) / width) as usize;
        if idx >= bins {
            idx = bins - 1;
        }
        counts[idx] += 1;
    }
    let norm = samples.len() as f64 * width;
    let density = counts.iter().map(|&c| c as f64 / norm).collect();
    let edges = (0..=bins).map(|i| lo + i as f64 * width).collect();
    Ok(Histogram { edges, density })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SimulationSpec;
    use crate::dist::Family;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn moments_errors_and_degenerate() {
        assert!(matches!(
            empirical_moments(&[1.0, 2.0, 3.0]),
            Err(Error::InsufficientData { .. })
        ));
        let m = empirical_moments(&[5.0; 10]).unwrap();
        assert_eq!(m.variance, 0.0);
        assert!(m.skewness.is_nan());
        assert!(m.excess_kurtosis.is_nan());
    }

    #[test]
    fn moments_on_symmetric_sample() {
        let m = empirical_moments(&[-1.0, 1.0, -1.0, 1.0, -1.0, 1.0]).unwrap();
        assert_eq!(m.mean, 0.0);
        assert_eq!(m.skewness, 0.0);
        assert_relative_eq!(m.variance, 1.2, epsilon = 1e-15);
    }

    #[test]
    fn moments_match_quadrature_on_stratified_draws() {
        // stratified quantile draws of the EGB2 law vs its exact moments
        let d = crate::dist::StandardizedDistribution::egb2(0.95, 0.45).unwrap();
        let n = 100_000;
        let samples: Vec<f64> = (0..n)
            .map(|i| d.quantile((i as f64 + 0.5) / n as f64).unwrap())
            .collect();
        let m = empirical_moments(&samples).unwrap();
        assert!(m.mean.abs() <= 4.0 * m.std_error_mean + 1e-4);
        let se_var = variance_std_error(&samples).unwrap();
        assert!((m.variance - 1.0).abs() <= 4.0 * se_var + 1e-3);
        let (k3, _) = d.cumulants();
        assert!((m.skewness - k3).abs() < 0.05);
    }

    proptest! {
        #[test]
        fn concat_with_negation_is_symmetric(xs in proptest::collection::vec(-100.0f64..100.0, 4..50)) {
            let mut both = xs.clone();
            both.extend(xs.iter().map(|x| -x));
            let m = empirical_moments(&both).unwrap();
            let scale = xs.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1e-30);
            prop_assert!(m.mean.abs() <= 1e-12 * scale);
            if m.variance > 1e-12 * scale * scale {
                prop_assert!(m.skewness.abs() <= 1e-9);
            }
        }

        #[test]
        fn ks_invariant_under_affine_maps(scale in 0.1f64..10.0, shift in -5.0f64..5.0) {
            // applying x -> a x + b to both samples and reference leaves the
            // one-sample statistic unchanged; verified through the two-sample
            // statistic which is rank-based
            let a: Vec<f64> = (0..200).map(|i| (i as f64 * 0.737).sin() * 2.0).collect();
            let b: Vec<f64> = (0..150).map(|i| (i as f64 * 1.13).cos() * 2.0 + 0.3).collect();
            let base = ks_two_sample(&a, &b).unwrap();
            let at: Vec<f64> = a.iter().map(|x| scale * x + shift).collect();
            let bt: Vec<f64> = b.iter().map(|x| scale * x + shift).collect();
            let mapped = ks_two_sample(&at, &bt).unwrap();
            prop_assert!((base.statistic - mapped.statistic).abs() < 1e-12);
        }
    }

    #[test]
    fn ks_plotting_position_construction() {
        // quantile draws at (i - 0.5)/n give statistic exactly 0.5/n
        let d = crate::dist::StandardizedDistribution::gaussian();
        let t = 4.0f64;
        let n = 100;
        let samples: Vec<f64> = (1..=n)
            .map(|i| t.sqrt() * d.quantile((i as f64 - 0.5) / n as f64).unwrap())
            .collect();
        let ks = ks_one_sample(&samples, &d, t).unwrap();
        assert_relative_eq!(ks.statistic, 0.5 / n as f64, epsilon = 1e-12);
        assert!(!ks.reject);
    }

    #[test]
    fn ks_rejects_wrong_marginal() {
        let gauss = crate::dist::StandardizedDistribution::gaussian();
        let al9 = crate::dist::StandardizedDistribution::asymmetric_laplace(9.0).unwrap();
        let t = 10.0f64;
        let n = 5000;
        let gauss_samples: Vec<f64> = (1..=n)
            .map(|i| t.sqrt() * gauss.quantile((i as f64 - 0.5) / n as f64).unwrap())
            .collect();
        let ks = ks_one_sample(&gauss_samples, &al9, t).unwrap();
        assert!(ks.reject, "statistic = {}", ks.statistic);
        // two-sample version
        let al_samples: Vec<f64> = (1..=n)
            .map(|i| t.sqrt() * al9.quantile((i as f64 - 0.5) / n as f64).unwrap())
            .collect();
        let two = ks_two_sample(&gauss_samples, &al_samples).unwrap();
        assert!(two.reject);
        let same = ks_two_sample(&gauss_samples, &gauss_samples).unwrap();
        assert_eq!(same.statistic, 0.0);
    }

    #[test]
    fn ks_needs_enough_samples() {
        let d = crate::dist::StandardizedDistribution::gaussian();
        assert!(ks_one_sample(&[0.0; 5], &d, 1.0).is_err());
        assert!(ks_two_sample(&[0.0; 5], &[0.0; 50]).is_err());
    }

    #[test]
    fn covariance_jackknife_sane() {
        let u: Vec<f64> = (0..500).map(|i| (i as f64 * 0.377).sin()).collect();
        let v: Vec<f64> = u.iter().map(|x| 2.0 * x).collect();
        let (cov, se) = covariance_jackknife(&u, &v).unwrap();
        let mu = u.iter().sum::<f64>() / 500.0;
        let expect = u.iter().map(|x| (x - mu) * (x - mu) * 2.0).sum::<f64>() / 499.0;
        assert_relative_eq!(cov, expect, max_relative = 1e-12);
        assert!(se > 0.0);
    }

    #[test]
    fn increment_times_must_lie_on_grid() {
        let spec = SimulationSpec::basic(
            Family::Gaussian,
            TimeGrid::new(0.5, 12).unwrap(),
            Scheme::BrownianOnly,
            20,
            5,
        );
        let e = sde::simulate_ensemble(&spec).unwrap();
        assert!(increment_covariance(&e, 1.0, 2.0, 5.0, 6.0).is_ok());
        assert!(increment_covariance(&e, 1.0, 2.3, 5.0, 6.0).is_err());
        assert!(increment_covariance(&e, 2.0, 1.0, 5.0, 6.0).is_err());
        assert!(increment_variance(&e, 1.0, 2.0).is_ok());
    }

    #[test]
    fn error_growth_gaussian_is_zero() {
        let d = crate::dist::StandardizedDistribution::gaussian();
        let grid = TimeGrid::new(0.1, 100).unwrap();
        let rep = error_growth(&d, &grid, 50, 33).unwrap();
        assert_eq!(rep.horizons, vec![2.0, 5.0, 10.0]);
        for (t, rms) in rep.horizons.iter().zip(&rep.rms_error) {
            assert!(*rms <= 1e-10, "rms at T = {t} is {rms}");
        }
    }

    #[test]
    fn error_growth_estimator_consistency() {
        // ensemble rms equals the aggregated per-path computation
        let d = crate::dist::StandardizedDistribution::asymmetric_laplace(9.0).unwrap();
        let grid = TimeGrid::new(0.05, 100).unwrap();
        let n = 30;
        let rep = error_growth(&d, &grid, n, 900).unwrap();
        let k = grid.index_of_time(5.0).unwrap();
        let mut ms = 0.0;
        for i in 0..n {
            let seed = 900 + i as u64;
            let a = sde::translation_path(&d, &grid, Scheme::RwDrift, seed).unwrap();
            let b = sde::translation_path(&d, &grid, Scheme::RwNoDrift, seed).unwrap();
            let e = a.values[k] - b.values[k];
            ms += e * e;
        }
        let rms = (ms / n as f64).sqrt();
        assert_relative_eq!(rep.rms_error[1], rms, max_relative = 1e-12);
    }

    #[test]
    fn isometry_gaussian_recovers_horizon() {
        let d = crate::dist::StandardizedDistribution::gaussian();
        let grid = TimeGrid::new(0.01, 500).unwrap();
        let (lhs, rhs, se) = ito_isometry_check(&grid, &d, 2000, 77).unwrap();
        // integral runs over [t_1, T]; both sides near T - dt
        let t_eff = grid.horizon() - grid.dt();
        assert_relative_eq!(rhs, t_eff, max_relative = 1e-12);
        assert!((lhs - rhs).abs() <= 3.0 * se, "lhs = {lhs}, rhs = {rhs}");
    }

    #[test]
    fn isometry_converges_with_path_count() {
        let d = crate::dist::StandardizedDistribution::student_t(10.0).unwrap();
        let grid = TimeGrid::new(0.05, 100).unwrap();
        let (_, _, se1) = ito_isometry_check(&grid, &d, 1000, 5).unwrap();
        let (_, _, se2) = ito_isometry_check(&grid, &d, 2000, 5).unwrap();
        let shrink = se2 / se1;
        let expect = 1.0 / 2.0f64.sqrt();
        assert!(
            (shrink - expect).abs() / expect < 0.2,
            "se ratio = {shrink}"
        );
    }

    #[test]
    fn histogram_basics() {
        assert!(histogram(&[1.0, 2.0], 1, None).is_err());
        assert!(histogram(&[], 10, None).is_err());
        assert!(histogram(&[1.0, 1.0], 10, Some((2.0, 2.0))).is_err());

        // all samples in one bin
        let h = histogram(&[0.51, 0.52, 0.6], 4, Some((0.0, 1.0))).unwrap();
        let width = 0.25;
        assert_relative_eq!(h.density[2], 1.0 / width, epsilon = 1e-12);
        assert_eq!(h.density[0], 0.0);

        // uniform synthetic samples come out flat within MC error
        let n = 100_000;
        let samples: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let h = histogram(&samples, 20, Some((0.0, 1.0))).unwrap();
        for d in &h.density {
            assert!((d - 1.0).abs() < 0.01, "density = {d}");
        }

        // densities integrate to one over the default range
        let skewed: Vec<f64> = (0..5000).map(|i| ((i as f64) * 0.01).exp() % 7.0).collect();
        let h = histogram(&skewed, 30, None).unwrap();
        let width = h.edges[1] - h.edges[0];
        let mass: f64 = h.density.iter().map(|d| d * width).sum();
        assert_relative_eq!(mass, 1.0, epsilon = 1e-9);
    }
}
