//! Named validation checks.
//!
//! Every check returns an effect size (or deviation), an optional standard
//! error, a fixed threshold and a pass flag, so `validate` runs and the
//! acceptance test suite share one deterministic implementation. Seeds are
//! fixed constants; `Level::Fast` shrinks path counts for a quick smoke run
//! while `Level::Full` uses the study-scale 10^4 paths.

use rayon::prelude::*;

use crate::config::SimulationSpec;
use crate::dist::{showcase_families, Family, StandardizedDistribution};
use crate::error::{Error, Result};
use crate::sde::{self, Scheme, TimeGrid};
use crate::specfun;
use crate::stats;
use crate::translation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            other => Err(Error::config(
                "level",
                format!("unknown level `{other}` (expected fast or full)"),
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Level::Fast => "fast",
            Level::Full => "full",
        }
    }

    fn n_paths(&self) -> usize {
        match self {
            Level::Fast => 1_000,
            Level::Full => 10_000,
        }
    }

    /// Path count for the increment-covariance statistics. The covariance
    /// effect at the probe times is a fraction of a percent of the increment
    /// variance, so separating it from its standard error by four sigma
    /// needs a few hundred thousand paths; the exact transform only has to
    /// be evaluated at the four probe times, which keeps this cheap.
    fn n_increment(&self) -> usize {
        400_000
    }

    /// Path count for the grid-refinement ordering. The coupled two-sample
    /// KS distances sit near 2e-3, so resolving their decrease needs the
    /// full study scale at either level.
    fn n_refinement(&self) -> usize {
        10_000
    }

    fn drift_ks_threshold(&self) -> f64 {
        match self {
            Level::Fast => 0.09,
            Level::Full => 0.05,
        }
    }

    fn nodrift_ks_threshold(&self) -> f64 {
        match self {
            Level::Fast => 0.16,
            Level::Full => 0.12,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub std_error: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckResult {
    fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            value,
            std_error: None,
            threshold,
            pass: value <= threshold,
        }
    }

    fn below_with_se(name: impl Into<String>, value: f64, se: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            value,
            std_error: Some(se),
            threshold,
            pass: value <= threshold,
        }
    }

    fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            value,
            std_error: None,
            threshold,
            pass: value > threshold,
        }
    }

    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        match self.std_error {
            Some(se) => format!(
                "[{status}] {:<46} value={:<14.6e} se={:<12.4e} threshold={}",
                self.name, self.value, se, self.threshold
            ),
            None => format!(
                "[{status}] {:<46} value={:<14.6e} threshold={}",
                self.name, self.value, self.threshold
            ),
        }
    }
}

/// Compact label for a family, used in check names and file names.
pub fn family_label(f: Family) -> String {
    match f {
        Family::Gaussian => "gaussian".to_string(),
        Family::StudentT { nu } => format!("t_nu_{nu}"),
        Family::AsymmetricLaplace { kappa } => format!("al_kappa_{kappa}"),
        Family::Egb2 { p, q } => format!("egb2_p_{p}_q_{q}"),
    }
}

const SEED_MARGINAL: u64 = 0x00d5_0001;
const SEED_REFINE: u64 = 0x00d5_0002;
const SEED_INCREMENT: u64 = 0x00d5_0003;
const SEED_SELF_SIM_A: u64 = 0x00d5_0004;
const SEED_SELF_SIM_B: u64 = 0x00d5_0005;
const SEED_ISOMETRY: u64 = 0x00d5_0006;
const SEED_ERROR_GROWTH: u64 = 0x00d5_0007;
const SEED_GAUSS_PATHS: u64 = 0x00d5_0008;
const SEED_POINTS: u64 = 0x00d5_0009;

/// Heavy quantiles (Student t, EGB2) go through the interpolation table in
/// simulation-scale checks; the asymmetric Laplace quantile is closed-form.
fn wants_table(f: Family) -> bool {
    matches!(f, Family::StudentT { .. } | Family::Egb2 { .. })
}

fn study_grid() -> TimeGrid {
    TimeGrid::new(0.01, 1000).expect("static grid")
}

fn endpoint_sample(
    family: Family,
    scheme: Scheme,
    grid: TimeGrid,
    n_paths: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let mut spec = SimulationSpec::basic(family, grid, scheme, n_paths, seed);
    spec.quantile_table = wants_table(family);
    sde::map_paths(&spec, |p| p.endpoint())
}

fn cross_section_sample(
    family: Family,
    scheme: Scheme,
    grid: TimeGrid,
    n_paths: usize,
    seed: u64,
    indices: &[usize],
) -> Result<Vec<Vec<f64>>> {
    let mut spec = SimulationSpec::basic(family, grid, scheme, n_paths, seed);
    spec.quantile_table = wants_table(family);
    let rows = sde::map_paths(&spec, |p| {
        indices.iter().map(|&k| p.values[k]).collect::<Vec<f64>>()
    })?;
    let mut cols = vec![Vec::with_capacity(n_paths); indices.len()];
    for row in rows {
        for (j, v) in row.into_iter().enumerate() {
            cols[j].push(v);
        }
    }
    Ok(cols)
}

/// Deterministic low-state generator for scattering evaluation points.
struct PointStream {
    seed: u64,
    counter: u64,
}

impl PointStream {
    fn new(salt: u64) -> Self {
        PointStream {
            seed: SEED_POINTS ^ salt,
            counter: 0,
        }
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.counter += 1;
        lo + (hi - lo) * sde::uniform_draw(self.seed, self.counter)
    }
}

// ---------------------------------------------------------------------------
// criterion 1: standardization constants
// ---------------------------------------------------------------------------

/// Computed (m, s) against the three-decimal reference values, plus the
/// numerical standardization gate for every showcase law.
pub fn table1_checks() -> Result<Vec<CheckResult>> {
    // (family, m, s, tolerance); the second EGB2 row has no reference values
    let rows: [(Family, Option<(f64, f64, f64)>); 6] = [
        (Family::StudentT { nu: 10.0 }, Some((0.000, 0.894, 1e-3))),
        (Family::StudentT { nu: 2.1 }, Some((0.000, 0.218, 1e-3))),
        (
            Family::AsymmetricLaplace { kappa: 1.5 },
            Some((0.508, 0.609, 1e-3)),
        ),
        (
            Family::AsymmetricLaplace { kappa: 9.0 },
            Some((0.988, 0.111, 1e-3)),
        ),
        (
            Family::Egb2 { p: 0.95, q: 0.45 },
            Some((-0.566, 0.361, 0.02)),
        ),
        (Family::Egb2 { p: 4.0, q: 0.1 }, None),
    ];
    let mut out = Vec::new();
    for (family, reference) in rows {
        let d = StandardizedDistribution::from_family(family)?;
        let label = family_label(family);
        if let Some((m, s, tol)) = reference {
            out.push(CheckResult::below(
                format!("table1/{label}/location"),
                (d.location() - m).abs(),
                tol,
            ));
            out.push(CheckResult::below(
                format!("table1/{label}/scale"),
                (d.scale() - s).abs(),
                tol,
            ));
        }
        out.push(standardization_gate(&d, &label)?);
    }
    Ok(out)
}

fn standardization_gate(d: &StandardizedDistribution, label: &str) -> Result<CheckResult> {
    let (mean, var) = d.standardization_check()?;
    let deviation = mean.abs().max((var - 1.0).abs());
    Ok(CheckResult::below(
        format!("standardization/{label}"),
        deviation,
        1e-6,
    ))
}

// ---------------------------------------------------------------------------
// criteria 2-5: marginal recovery, walk fidelity, moments
// ---------------------------------------------------------------------------

/// Endpoint samples for every showcase family under the three schemes.
pub struct PanelEndpoints {
    pub family: Family,
    pub exact: Vec<f64>,
    pub rw_drift: Vec<f64>,
    pub rw_nodrift: Vec<f64>,
}

/// Simulate the T = 10, dt = 0.01 study endpoints for all six panels.
pub fn simulate_panels(level: Level) -> Result<Vec<PanelEndpoints>> {
    let grid = study_grid();
    let n = level.n_paths();
    showcase_families()
        .into_iter()
        .enumerate()
        .map(|(i, family)| {
            let base = SEED_MARGINAL + 1000 * i as u64;
            Ok(PanelEndpoints {
                family,
                exact: endpoint_sample(family, Scheme::ExactTransform, grid, n, base)?,
                rw_drift: endpoint_sample(family, Scheme::RwDrift, grid, n, base)?,
                rw_nodrift: endpoint_sample(family, Scheme::RwNoDrift, grid, n, base)?,
            })
        })
        .collect()
}

/// Criterion 2: exact-transform endpoints reproduce the marginal at the 1%
/// one-sample KS level.
pub fn marginal_recovery_checks(panels: &[PanelEndpoints]) -> Result<Vec<CheckResult>> {
    let t = study_grid().horizon();
    panels
        .iter()
        .map(|p| {
            let d = StandardizedDistribution::from_family(p.family)?;
            let ks = stats::ks_one_sample(&p.exact, &d, t)?;
            Ok(CheckResult::below(
                format!("marginal_exact/{}", family_label(p.family)),
                ks.statistic,
                ks.critical_1pct,
            ))
        })
        .collect()
}

/// Criterion 3: drift-corrected walk endpoints stay KS-close to the marginal,
/// and the statistic shrinks under grid refinement.
pub fn drift_walk_checks(level: Level, panels: &[PanelEndpoints]) -> Result<Vec<CheckResult>> {
    let t = study_grid().horizon();
    let mut out = Vec::new();
    for p in panels {
        let d = StandardizedDistribution::from_family(p.family)?;
        let ks = stats::ks_one_sample(&p.rw_drift, &d, t)?;
        out.push(CheckResult::below(
            format!("drift_walk_ks/{}", family_label(p.family)),
            ks.statistic,
            level.drift_ks_threshold(),
        ));
    }
    for family in [
        Family::StudentT { nu: 10.0 },
        Family::AsymmetricLaplace { kappa: 1.5 },
    ] {
        out.push(refinement_check(level, family)?);
    }
    Ok(out)
}

/// KS statistic of the drift-corrected walk at dt in {0.04, 0.02, 0.01} with
/// one shared Brownian driver per path (coarser grids subsample the fine
/// one). The statistic compares walk endpoints against exact-transform
/// endpoints of the same drivers: against the theoretical marginal the walk
/// is already at the sampling noise floor for every one of these steps
/// (measured bias < 1e-3 for t(10) even at dt = 0.04), so only the coupled
/// comparison resolves the ordering. Reports the worst adjacent ratio
/// ks(finer)/ks(coarser); below 1 means strictly decreasing.
fn refinement_check(level: Level, family: Family) -> Result<CheckResult> {
    let fine = study_grid();
    let factors = [4usize, 2, 1];
    let n = level.n_refinement();
    let d = StandardizedDistribution::from_family(family)?;
    let d = if wants_table(family) {
        d.with_quantile_table()?
    } else {
        d
    };

    let endpoints: Vec<[(f64, f64); 3]> = (0..n)
        .into_par_iter()
        .map(|i| {
            let seed = SEED_REFINE.wrapping_add(i as u64);
            let full = sde::brownian_path(&fine, seed).values;
            let mut ends = [(0.0, 0.0); 3];
            for (j, &factor) in factors.iter().enumerate() {
                let coarse = TimeGrid::new(fine.dt() * factor as f64, fine.n_steps() / factor)?;
                let sub: Vec<f64> = (0..coarse.n_steps())
                    .map(|k| full[(k + 1) * factor - 1])
                    .collect();
                let walk = sde::translation_path_with_driver(
                    &d,
                    &coarse,
                    Scheme::RwDrift,
                    sub.clone(),
                    seed,
                )?;
                let exact = sde::translation_path_with_driver(
                    &d,
                    &coarse,
                    Scheme::ExactTransform,
                    sub,
                    seed,
                )?;
                ends[j] = (walk.endpoint(), exact.endpoint());
            }
            Ok(ends)
        })
        .collect::<Result<_>>()?;

    let mut ks = [0.0; 3];
    for j in 0..3 {
        let walk: Vec<f64> = endpoints.iter().map(|e| e[j].0).collect();
        let exact: Vec<f64> = endpoints.iter().map(|e| e[j].1).collect();
        ks[j] = stats::ks_two_sample(&walk, &exact)?.statistic;
    }
    let worst_ratio = (ks[1] / ks[0]).max(ks[2] / ks[1]);
    Ok(CheckResult::below(
        format!("drift_walk_refinement/{}", family_label(family)),
        worst_ratio,
        1.0,
    ))
}

/// Criterion 4: the drift-free walk still recovers the marginal shape: KS
/// within the looser bound, and the empirical skewness sign matches the
/// target third cumulant for the skewed panels.
pub fn nodrift_checks(level: Level, panels: &[PanelEndpoints]) -> Result<Vec<CheckResult>> {
    let t = study_grid().horizon();
    let mut out = Vec::new();
    for p in panels {
        let d = StandardizedDistribution::from_family(p.family)?;
        let label = family_label(p.family);
        let ks = stats::ks_one_sample(&p.rw_nodrift, &d, t)?;
        out.push(CheckResult::below(
            format!("nodrift_ks/{label}"),
            ks.statistic,
            level.nodrift_ks_threshold(),
        ));
        let (k3, _) = d.cumulants();
        if k3.is_finite() && k3 != 0.0 {
            let m = stats::empirical_moments(&p.rw_nodrift)?;
            out.push(CheckResult::above(
                format!("nodrift_skew_sign/{label}"),
                m.skewness * k3.signum(),
                0.0,
            ));
        }
    }
    Ok(out)
}

/// Criterion 5: endpoint mean within 4 standard errors of 0 and variance
/// within 4 standard errors of T, for every scheme and distribution.
///
/// The Monte Carlo standard errors come from the target law's exact
/// cumulants — se(mean) = sqrt(T/n) and se(var) = T sqrt((2/(n-1) + k4/n)) —
/// rather than from the sample: the heavy-tail panel (nu = 2.1) has infinite
/// fourth cumulant, so no sample-based error estimate for the variance obeys
/// a central limit theorem there. An infinite k4 makes the variance
/// criterion vacuous for that law, and the result records se = inf.
pub fn moment_checks(level: Level, panels: &[PanelEndpoints]) -> Result<Vec<CheckResult>> {
    let grid = study_grid();
    let t = grid.horizon();
    let mut out = Vec::new();
    let mut run = |label: String, sample: &[f64], kurt: f64| -> Result<()> {
        let m = stats::empirical_moments(sample)?;
        let n = sample.len() as f64;
        let se_mean = (t / n).sqrt();
        let se_var = t * (2.0 / (n - 1.0) + kurt / n).sqrt();
        out.push(CheckResult::below_with_se(
            format!("moments_mean/{label}"),
            m.mean.abs() / se_mean,
            se_mean,
            4.0,
        ));
        out.push(CheckResult::below_with_se(
            format!("moments_var/{label}"),
            (m.variance - t).abs() / se_var,
            se_var,
            4.0,
        ));
        Ok(())
    };
    for p in panels {
        let label = family_label(p.family);
        let (_, kurt) = StandardizedDistribution::from_family(p.family)?.cumulants();
        run(format!("exact/{label}"), &p.exact, kurt)?;
        run(format!("rw_drift/{label}"), &p.rw_drift, kurt)?;
        run(format!("rw_nodrift/{label}"), &p.rw_nodrift, kurt)?;
    }
    // Gaussian control across all schemes, including the binary walk
    for scheme in [
        Scheme::ExactTransform,
        Scheme::RwDrift,
        Scheme::RwNoDrift,
        Scheme::BinaryWalk,
    ] {
        let sample = endpoint_sample(
            Family::Gaussian,
            scheme,
            grid,
            level.n_paths(),
            SEED_MARGINAL + 9000,
        )?;
        run(format!("{}/gaussian", scheme.name()), &sample, 0.0)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// criterion 6: Gaussian degeneracy
// ---------------------------------------------------------------------------

pub fn gaussian_degeneracy_checks() -> Result<Vec<CheckResult>> {
    let grid = study_grid();
    let d = StandardizedDistribution::gaussian();
    let mut out = Vec::new();
    for scheme in [
        Scheme::ExactTransform,
        Scheme::RwDrift,
        Scheme::RwNoDrift,
        Scheme::BinaryWalk,
    ] {
        let worst = (0..100u64)
            .into_par_iter()
            .map(|i| -> Result<f64> {
                let p = sde::translation_path(&d, &grid, scheme, SEED_GAUSS_PATHS + i)?;
                let driver = p.driver.as_ref().expect("driver retained");
                Ok(p.values
                    .iter()
                    .zip(driver)
                    .map(|(v, b)| (v - b).abs())
                    .fold(0.0f64, f64::max))
            })
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
        out.push(CheckResult::below(
            format!("gaussian_pathwise/{}", scheme.name()),
            worst,
            1e-10,
        ));
    }

    let mut points = PointStream::new(6);
    let mut worst_r = 0.0f64;
    let mut worst_h = 0.0f64;
    for _ in 0..100 {
        let t = points.uniform(0.05, 20.0);
        let b = points.uniform(-3.0, 3.0) * t.sqrt();
        worst_r = worst_r.max(translation::drift_correction(b, t, &d)?.abs());
        worst_h = worst_h.max((translation::diffusion_modulator(b, t, &d)? - 1.0).abs());
    }
    out.push(CheckResult::below("gaussian_drift_zero", worst_r, 1e-12));
    out.push(CheckResult::below("gaussian_modulator_one", worst_h, 1e-12));
    Ok(out)
}

// ---------------------------------------------------------------------------
// criterion 7: increment structure and self-similarity
// ---------------------------------------------------------------------------

pub fn increment_property_checks(level: Level) -> Result<Vec<CheckResult>> {
    // the exact transform is pointwise in the driver, so the joint law at
    // the four probe times is already exact on a unit-step grid
    let grid = TimeGrid::new(1.0, 6).expect("static grid");
    let n = level.n_increment();
    let times = [1.0, 2.0, 5.0, 6.0];
    let indices: Vec<usize> = times
        .iter()
        .map(|&t| grid.index_of_time(t).expect("times on grid"))
        .collect();

    let mut out = Vec::new();
    for (family, is_control) in [
        (Family::AsymmetricLaplace { kappa: 9.0 }, false),
        (Family::Gaussian, true),
    ] {
        let label = family_label(family);
        let cols = cross_section_sample(
            family,
            Scheme::ExactTransform,
            grid,
            n,
            SEED_INCREMENT,
            &indices,
        )?;
        let early: Vec<f64> = cols[1].iter().zip(&cols[0]).map(|(b, a)| b - a).collect();
        let late: Vec<f64> = cols[3].iter().zip(&cols[2]).map(|(b, a)| b - a).collect();

        let (cov, cov_se) = stats::covariance_jackknife(&late, &early)?;
        let (var_early, se_early) = stats::variance_jackknife(&early)?;
        let (var_late, se_late) = stats::variance_jackknife(&late)?;
        let var_diff = var_late - var_early;
        let var_diff_se = (se_early * se_early + se_late * se_late).sqrt();

        if is_control {
            // Brownian motion: independent stationary increments, so both
            // effects stay within 3 standard errors of zero
            out.push(CheckResult::below_with_se(
                format!("increment_cov_control/{label}"),
                cov.abs() / cov_se,
                cov_se,
                3.0,
            ));
            out.push(CheckResult::below_with_se(
                format!("increment_var_control/{label}"),
                var_diff.abs() / var_diff_se,
                var_diff_se,
                3.0,
            ));
        } else {
            out.push(CheckResult::above(
                format!("increment_cov/{label}"),
                cov.abs() / cov_se,
                4.0,
            ));
            out.push(CheckResult::above(
                format!("increment_var_nonstat/{label}"),
                var_diff.abs() / var_diff_se,
                4.0,
            ));
        }
    }

    // self-similarity: endpoints at T = 10 scaled by 1/2 against independent
    // endpoints at T = 2.5
    let family = Family::AsymmetricLaplace { kappa: 9.0 };
    let long = endpoint_sample(
        family,
        Scheme::ExactTransform,
        study_grid(),
        level.n_paths(),
        SEED_SELF_SIM_A,
    )?;
    let scaled: Vec<f64> = long.iter().map(|z| z / 2.0).collect();
    let short_grid = TimeGrid::new(0.01, 250).expect("static grid");
    let short = endpoint_sample(
        family,
        Scheme::ExactTransform,
        short_grid,
        level.n_paths(),
        SEED_SELF_SIM_B,
    )?;
    let ks = stats::ks_two_sample(&scaled, &short)?;
    out.push(CheckResult::below(
        format!("self_similarity/{}", family_label(family)),
        ks.statistic,
        ks.critical_1pct,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// criterion 8: calculus consistency
// ---------------------------------------------------------------------------

pub fn calculus_checks() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (fi, family) in showcase_families().into_iter().enumerate() {
        let d = StandardizedDistribution::from_family(family)?;
        let label = family_label(family);
        let mut points = PointStream::new(800 + fi as u64);
        let mut worst_fd = 0.0f64;
        let mut worst_identity = 0.0f64;
        let mut checked = 0;
        while checked < 100 {
            let t = points.uniform(0.1, 20.0);
            let z = points.uniform(-2.5, 2.5);
            if let Family::AsymmetricLaplace { kappa } = family {
                // the transformed point crosses the density kink at a fixed
                // z; keep clear of it so the differences stay one-sided
                let k2 = kappa * kappa;
                let z_kink = specfun::norm_quantile_raw(k2 / (1.0 + k2));
                if (z - z_kink).abs() < 0.1 {
                    continue;
                }
            }
            let b = z * t.sqrt();
            let p = translation::ito_partials(b, t, &d)?;
            let scale = p.dg_dt.abs() + p.dg_dy.abs() + p.d2g_dy2.abs();

            let hb = 1e-5 * t.sqrt();
            let fd_dy = (translation::transform(b + hb, t, &d)?
                - translation::transform(b - hb, t, &d)?)
                / (2.0 * hb);
            worst_fd = worst_fd.max((fd_dy - p.dg_dy).abs() / scale);

            let ht = 1e-5 * t;
            let fd_dt = (translation::transform(b, t + ht, &d)?
                - translation::transform(b, t - ht, &d)?)
                / (2.0 * ht);
            worst_fd = worst_fd.max((fd_dt - p.dg_dt).abs() / scale);

            // second y-derivative as a first difference of dg/dy (verified
            // against the transform just above); a direct second difference
            // would amplify the quantile's iterative-inversion noise past
            // the tolerance
            let fd_dy2 = (translation::diffusion_modulator(b + hb, t, &d)?
                - translation::diffusion_modulator(b - hb, t, &d)?)
                / (2.0 * hb);
            worst_fd = worst_fd.max((fd_dy2 - p.d2g_dy2).abs() / scale);

            let r = translation::drift_correction(b, t, &d)?;
            let composed = p.dg_dt + 0.5 * p.d2g_dy2;
            worst_identity = worst_identity.max((composed - r).abs() / r.abs().max(1e-8));
            checked += 1;
        }
        out.push(CheckResult::below(
            format!("calculus_fd/{label}"),
            worst_fd,
            1e-5,
        ));
        out.push(CheckResult::below(
            format!("drift_identity/{label}"),
            worst_identity,
            1e-8,
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// criterion 9: stochastic-integral isometry
// ---------------------------------------------------------------------------

pub fn isometry_checks(level: Level) -> Result<Vec<CheckResult>> {
    let grid = study_grid();
    let mut out = Vec::new();
    for family in [
        Family::Gaussian,
        Family::StudentT { nu: 10.0 },
        Family::AsymmetricLaplace { kappa: 1.5 },
    ] {
        let d = StandardizedDistribution::from_family(family)?;
        let d = if wants_table(family) {
            d.with_quantile_table()?
        } else {
            d
        };
        let (lhs, rhs, se) = stats::ito_isometry_check(&grid, &d, level.n_paths(), SEED_ISOMETRY)?;
        out.push(CheckResult::below_with_se(
            format!("isometry/{}", family_label(family)),
            (lhs - rhs).abs() / se,
            se,
            3.0,
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// criterion 10: accumulated drift error
// ---------------------------------------------------------------------------

pub fn error_growth_checks(level: Level) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let n = (level.n_paths() / 5).max(200);

    let gauss = StandardizedDistribution::gaussian();
    let grid10 = study_grid();
    let rep = stats::error_growth(&gauss, &grid10, n, SEED_ERROR_GROWTH)?;
    let worst = rep.rms_error.iter().cloned().fold(0.0f64, f64::max);
    out.push(CheckResult::below(
        "error_growth_zero/gaussian",
        worst,
        1e-10,
    ));

    let al9 = StandardizedDistribution::asymmetric_laplace(9.0)?;
    let grid50 = TimeGrid::new(0.01, 5000).expect("static grid");
    let rep = stats::error_growth(&al9, &grid50, n, SEED_ERROR_GROWTH)?;
    let at = |t: f64| {
        rep.horizons
            .iter()
            .position(|&h| h == t)
            .map(|i| rep.bound_ratio[i])
            .expect("horizon present")
    };
    out.push(CheckResult::below(
        "error_growth_bound/al_kappa_9",
        at(50.0) / at(5.0),
        3.0,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// criterion 11: numeric identities
// ---------------------------------------------------------------------------

pub fn numerics_checks() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for i in -160..=160 {
        let x = i as f64 * 0.05;
        worst = worst.max((specfun::std_normal_cdf(x)? + specfun::std_normal_cdf(-x)? - 1.0).abs());
    }
    out.push(CheckResult::below(
        "numerics/normal_cdf_symmetry",
        worst,
        1e-14,
    ));

    let mut worst = 0.0f64;
    let mut p = 1e-10;
    while p < 1.0 {
        let x = specfun::std_normal_quantile(p)?;
        worst = worst.max((specfun::std_normal_cdf(x)? - p).abs());
        p *= 2.9;
    }
    out.push(CheckResult::below(
        "numerics/normal_roundtrip",
        worst,
        1e-12,
    ));

    let mut worst = 0.0f64;
    let mut x = 0.1;
    while x < 50.0 {
        let fd = (specfun::log_gamma(x + 1e-6)? - specfun::log_gamma(x - 1e-6)?) / 2e-6;
        let dg = specfun::digamma(x)?;
        worst = worst.max((fd - dg).abs() / dg.abs().max(1.0));
        let fd2 = (specfun::digamma(x + 1e-6)? - specfun::digamma(x - 1e-6)?) / 2e-6;
        let tg = specfun::trigamma(x)?;
        worst = worst.max((fd2 - tg).abs() / tg.max(1.0));
        x *= 1.35;
    }
    out.push(CheckResult::below(
        "numerics/polygamma_derivatives",
        worst,
        1e-6,
    ));

    let mut points = PointStream::new(11);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = points.uniform(0.1, 8.0);
        let b = points.uniform(0.1, 8.0);
        let x = points.uniform(0.0, 1.0);
        let lhs = specfun::reg_inc_beta(a, b, x)?;
        let rhs = 1.0 - specfun::reg_inc_beta(b, a, 1.0 - x)?;
        worst = worst.max((lhs - rhs).abs());
    }
    out.push(CheckResult::below("numerics/beta_reflection", worst, 1e-12));

    let mut worst = 0.0f64;
    let mut x = 0.2;
    while x < 40.0 {
        let lhs = specfun::log_gamma(x + 1.0)?;
        let rhs = specfun::log_gamma(x)? + x.ln();
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        x *= 1.45;
    }
    out.push(CheckResult::below(
        "numerics/log_gamma_recurrence",
        worst,
        1e-12,
    ));

    let mut worst = 0.0f64;
    let mut families = vec![Family::Gaussian];
    families.extend(showcase_families());
    for family in families {
        let d = StandardizedDistribution::from_family(family)?;
        for u in [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99] {
            let x = d.quantile(u)?;
            worst = worst.max((d.cdf(x) - u).abs());
        }
    }
    out.push(CheckResult::below(
        "numerics/quantile_roundtrip",
        worst,
        1e-9,
    ));

    Ok(out)
}

/// Run the whole suite at the requested level.
pub fn run_all(level: Level) -> Result<Vec<CheckResult>> {
    let mut results = table1_checks()?;
    let panels = simulate_panels(level)?;
    results.extend(marginal_recovery_checks(&panels)?);
    results.extend(drift_walk_checks(level, &panels)?);
    results.extend(nodrift_checks(level, &panels)?);
    results.extend(moment_checks(level, &panels)?);
    drop(panels);
    results.extend(gaussian_degeneracy_checks()?);
    results.extend(increment_property_checks(level)?);
    results.extend(calculus_checks()?);
    results.extend(isometry_checks(level)?);
    results.extend(error_growth_checks(level)?);
    results.extend(numerics_checks()?);
    Ok(results)
}
