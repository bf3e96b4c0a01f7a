//! Path generation.
//!
//! A Brownian driver is built from normal increments
//! `B_{t_k} = B_{t_{k-1}} + sqrt(dt) W_k` on the uniform grid t_k = k dt, and
//! the translation process is produced by one of four schemes:
//!
//! - `ExactTransform`: apply the pointwise transform to every driver value,
//! - `RwDrift`: Euler recursion `Z_{k+1} = Z_k + r dt + h dB` (drift-corrected),
//! - `RwNoDrift`: the same recursion without the r dt term,
//! - `BinaryWalk`: +/- sqrt(dt) coin-flip driver with the h step-size
//!   correction.
//!
//! Walks start from `Z_{t_1} = transform(B_{t_1}, t_1)` because both h and r
//! divide by sqrt(t) and the grid deliberately excludes t = 0.
//!
//! Randomness is a counter stream keyed by (seed, step index), so a path is a
//! pure function of its seed and ensembles are bit-identical under any degree
//! of parallelism. Within an ensemble, path i uses seed `base_seed + i`.

use rayon::prelude::*;

use crate::config::SimulationSpec;
use crate::dist::StandardizedDistribution;
use crate::error::{Error, Result};
use crate::specfun::norm_quantile_raw;
use crate::translation::{clamp_z, drift_kernel_z, modulator_z};

// ---------------------------------------------------------------------------
// time grid
// ---------------------------------------------------------------------------

/// Uniform grid t_k = k * dt for k = 1..=n_steps; t = 0 is the initial
/// condition, not an evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::domain(format!("TimeGrid: dt = {dt} must be > 0")));
        }
        if n_steps == 0 {
            return Err(Error::domain("TimeGrid: n_steps must be >= 1".to_string()));
        }
        Ok(TimeGrid { dt, n_steps })
    }

    /// Grid with the given horizon T = n_steps * dt (n_steps rounded).
    pub fn with_horizon(dt: f64, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::domain(format!(
                "TimeGrid: horizon = {horizon} must be > 0"
            )));
        }
        let n = (horizon / dt).round() as usize;
        TimeGrid::new(dt, n.max(1))
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn horizon(&self) -> f64 {
        self.dt * self.n_steps as f64
    }

    /// Time of 0-based grid index k, i.e. (k+1) dt.
    pub fn time(&self, index: usize) -> f64 {
        (index + 1) as f64 * self.dt
    }

    /// Grid index whose time equals `t`, if `t` lies on the grid.
    pub fn index_of_time(&self, t: f64) -> Option<usize> {
        let k = t / self.dt;
        let rounded = k.round();
        if (k - rounded).abs() > 1e-9 * k.abs().max(1.0) {
            return None;
        }
        let idx = rounded as isize - 1;
        if idx < 0 || idx as usize >= self.n_steps {
            None
        } else {
            Some(idx as usize)
        }
    }
}

// ---------------------------------------------------------------------------
// schemes & coefficients
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Scheme {
    ExactTransform,
    RwDrift,
    RwNoDrift,
    BinaryWalk,
    BrownianOnly,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::ExactTransform => "exact",
            Scheme::RwDrift => "rw_drift",
            Scheme::RwNoDrift => "rw_nodrift",
            Scheme::BinaryWalk => "binary_walk",
            Scheme::BrownianOnly => "brownian",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Scheme::ExactTransform),
            "rw_drift" => Ok(Scheme::RwDrift),
            "rw_nodrift" => Ok(Scheme::RwNoDrift),
            "binary_walk" => Ok(Scheme::BinaryWalk),
            "brownian" => Ok(Scheme::BrownianOnly),
            other => Err(Error::config(
                "scheme",
                format!(
                    "unknown scheme `{other}` (expected exact, rw_drift, rw_nodrift, binary_walk or brownian)"
                ),
            )),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Drift coefficient alpha(x, t) of the outer SDE, a closed enumeration so
/// specs stay serializable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriftSpec {
    Zero,
    Constant(f64),
    MeanRevert { rate: f64, level: f64 },
}

impl DriftSpec {
    #[inline]
    pub fn eval(&self, x: f64, _t: f64) -> f64 {
        match *self {
            DriftSpec::Zero => 0.0,
            DriftSpec::Constant(a) => a,
            DriftSpec::MeanRevert { rate, level } => rate * (level - x),
        }
    }
}

/// Diffusion coefficient sigma(x, t) of the outer SDE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiffusionSpec {
    Constant(f64),
    Proportional(f64),
}

impl DiffusionSpec {
    #[inline]
    pub fn eval(&self, x: f64, _t: f64) -> f64 {
        match *self {
            DiffusionSpec::Constant(s) => s,
            DiffusionSpec::Proportional(s) => s * x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSpec {
    pub drift: DriftSpec,
    pub diffusion: DiffusionSpec,
}

// ---------------------------------------------------------------------------
// counter-based randomness
// ---------------------------------------------------------------------------

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Uniform draw in (0, 1) keyed by (seed, step); a pure function, so streams
/// are order- and parallelism-invariant.
#[inline]
pub(crate) fn uniform_draw(seed: u64, step: u64) -> f64 {
    let key = mix64(seed.wrapping_add(0x9e3779b97f4a7c15))
        ^ step
            .wrapping_mul(0x9e3779b97f4a7c15)
            .wrapping_add(0x632be59bd9b4e019);
    let bits = mix64(key);
    (bits >> 11) as f64 * (1.0 / 9007199254740992.0) + (0.5 / 9007199254740992.0)
}

/// Standard normal draw via the inverse CDF of a keyed uniform.
#[inline]
pub(crate) fn normal_draw(seed: u64, step: u64) -> f64 {
    norm_quantile_raw(uniform_draw(seed, step))
}

/// Fair +/- 1 draw.
#[inline]
pub(crate) fn sign_draw(seed: u64, step: u64) -> f64 {
    if uniform_draw(seed, step) < 0.5 {
        -1.0
    } else {
        1.0
    }
}

// ---------------------------------------------------------------------------
// paths
// ---------------------------------------------------------------------------

/// One sample trajectory on a grid, tagged with the scheme and seed that
/// produced it. `driver` holds the underlying Brownian (or coin-flip) walk.
#[derive(Debug, Clone)]
pub struct Path {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
    pub driver: Option<Vec<f64>>,
    pub scheme: Scheme,
    pub seed: u64,
    pub clamp_count: u64,
}

impl Path {
    pub fn endpoint(&self) -> f64 {
        *self.values.last().expect("non-empty grid")
    }
}

/// Brownian driver values on the grid.
fn brownian_driver(grid: &TimeGrid, seed: u64) -> Vec<f64> {
    let sqrt_dt = grid.dt().sqrt();
    let mut values = Vec::with_capacity(grid.n_steps());
    let mut b = 0.0;
    for k in 1..=grid.n_steps() {
        b += sqrt_dt * normal_draw(seed, k as u64);
        values.push(b);
    }
    values
}

/// Coin-flip driver: W_k = sum of sqrt(dt) * xi_i with xi = +/-1.
fn binary_driver(grid: &TimeGrid, seed: u64) -> Vec<f64> {
    let sqrt_dt = grid.dt().sqrt();
    let mut values = Vec::with_capacity(grid.n_steps());
    let mut w = 0.0;
    for k in 1..=grid.n_steps() {
        w += sqrt_dt * sign_draw(seed, k as u64);
        values.push(w);
    }
    values
}

/// Standard Brownian motion path.
pub fn brownian_path(grid: &TimeGrid, seed: u64) -> Path {
    let values = brownian_driver(grid, seed);
    Path {
        grid: *grid,
        driver: Some(values.clone()),
        values,
        scheme: Scheme::BrownianOnly,
        seed,
        clamp_count: 0,
    }
}

/// Translation-process path under the chosen scheme, driven by the keyed
/// stream for `seed`.
pub fn translation_path(
    d: &StandardizedDistribution,
    grid: &TimeGrid,
    scheme: Scheme,
    seed: u64,
) -> Result<Path> {
    match scheme {
        Scheme::BrownianOnly => Ok(brownian_path(grid, seed)),
        Scheme::BinaryWalk => {
            let driver = binary_driver(grid, seed);
            translation_path_with_driver(d, grid, scheme, driver, seed)
        }
        _ => {
            let driver = brownian_driver(grid, seed);
            translation_path_with_driver(d, grid, scheme, driver, seed)
        }
    }
}

/// Binary-increment walk: the driver takes +/- sqrt(dt) coin-flip steps and
/// the process steps by h(W_k, t_k) sqrt(dt) xi_{k+1}.
pub fn binary_walk_path(d: &StandardizedDistribution, grid: &TimeGrid, seed: u64) -> Result<Path> {
    translation_path(d, grid, Scheme::BinaryWalk, seed)
}

/// The same schemes over an explicitly supplied driver; used for coupled
/// refinement experiments and the error-growth measurement, where several
/// recursions must share one Brownian path.
pub fn translation_path_with_driver(
    d: &StandardizedDistribution,
    grid: &TimeGrid,
    scheme: Scheme,
    driver: Vec<f64>,
    seed: u64,
) -> Result<Path> {
    assert_eq!(driver.len(), grid.n_steps(), "driver/grid length mismatch");
    let mut clamps = 0u64;
    let values = match scheme {
        Scheme::BrownianOnly => driver.clone(),
        Scheme::ExactTransform => {
            let mut values = Vec::with_capacity(grid.n_steps());
            for (i, &b) in driver.iter().enumerate() {
                let t = grid.time(i);
                let (z, clamped) = clamp_z(b / t.sqrt());
                if clamped {
                    clamps += 1;
                }
                values.push(t.sqrt() * d.quantile_from_gaussian(z)?);
            }
            values
        }
        Scheme::RwDrift | Scheme::RwNoDrift | Scheme::BinaryWalk => {
            let with_drift = scheme == Scheme::RwDrift;
            let mut values = Vec::with_capacity(grid.n_steps());
            let t1 = grid.time(0);
            let (z0, clamped) = clamp_z(driver[0] / t1.sqrt());
            if clamped {
                clamps += 1;
            }
            let mut z_state = t1.sqrt() * d.quantile_from_gaussian(z0)?;
            values.push(z_state);
            for i in 0..grid.n_steps() - 1 {
                let t = grid.time(i);
                let sqrt_t = t.sqrt();
                let (z, clamped) = clamp_z(driver[i] / sqrt_t);
                if clamped {
                    clamps += 1;
                }
                let h = modulator_z(z, d)?;
                let mut step = h * (driver[i + 1] - driver[i]);
                if with_drift {
                    step += drift_kernel_z(z, d)? / sqrt_t * grid.dt();
                }
                z_state += step;
                values.push(z_state);
            }
            values
        }
    };
    Ok(Path {
        grid: *grid,
        values,
        driver: Some(driver),
        scheme,
        seed,
        clamp_count: clamps,
    })
}

/// Euler path of `dX = (alpha + r) dt + sigma h dB` (scheme `RwDrift`) or the
/// drift-free form without r (scheme `RwNoDrift`).
///
/// The first grid state is x0 advanced one step from t = 0, with the
/// stochastic increment taken from the exact transform at t_1 (h and r are
/// singular at t = 0).
pub fn sde_path(
    coef: &CoefficientSpec,
    d: &StandardizedDistribution,
    grid: &TimeGrid,
    scheme: Scheme,
    x0: f64,
    seed: u64,
) -> Result<Path> {
    if !matches!(scheme, Scheme::RwDrift | Scheme::RwNoDrift) {
        return Err(Error::domain(format!(
            "sde_path: scheme {scheme} not supported (use rw_drift or rw_nodrift)"
        )));
    }
    let with_drift = scheme == Scheme::RwDrift;
    let driver = brownian_driver(grid, seed);
    let mut clamps = 0u64;
    let dt = grid.dt();
    let mut values = Vec::with_capacity(grid.n_steps());

    let t1 = grid.time(0);
    let (z0, clamped) = clamp_z(driver[0] / t1.sqrt());
    if clamped {
        clamps += 1;
    }
    let dz0 = t1.sqrt() * d.quantile_from_gaussian(z0)?;
    let mut x = x0 + coef.drift.eval(x0, 0.0) * dt + coef.diffusion.eval(x0, 0.0) * dz0;
    if !x.is_finite() {
        return Err(Error::PathAborted { step: 1 });
    }
    values.push(x);

    for i in 0..grid.n_steps() - 1 {
        let t = grid.time(i);
        let sqrt_t = t.sqrt();
        let (z, clamped) = clamp_z(driver[i] / sqrt_t);
        if clamped {
            clamps += 1;
        }
        let h = modulator_z(z, d)?;
        let mut drift = coef.drift.eval(x, t);
        if with_drift {
            drift += drift_kernel_z(z, d)? / sqrt_t;
        }
        x += drift * dt + coef.diffusion.eval(x, t) * h * (driver[i + 1] - driver[i]);
        if !x.is_finite() {
            return Err(Error::PathAborted { step: i + 2 });
        }
        values.push(x);
    }
    Ok(Path {
        grid: *grid,
        values,
        driver: Some(driver),
        scheme,
        seed,
        clamp_count: clamps,
    })
}

// ---------------------------------------------------------------------------
// ensembles
// ---------------------------------------------------------------------------

/// A collection of paths sharing grid, scheme and distribution. Aborted
/// paths (coefficient blow-ups) are kept out of the collection and reported
/// with their indices.
#[derive(Debug, Clone)]
pub struct Ensemble {
    pub spec: SimulationSpec,
    pub paths: Vec<Path>,
    /// (path index, step) of every aborted path
    pub aborted: Vec<(usize, usize)>,
}

impl Ensemble {
    /// Values of all surviving paths at 0-based grid index k.
    pub fn cross_section(&self, index: usize) -> Vec<f64> {
        self.paths.iter().map(|p| p.values[index]).collect()
    }

    pub fn endpoints(&self) -> Vec<f64> {
        self.paths.iter().map(|p| p.endpoint()).collect()
    }

    pub fn total_clamps(&self) -> u64 {
        self.paths.iter().map(|p| p.clamp_count).sum()
    }
}

/// Simulate one path of a spec: index i uses seed base_seed + i.
pub fn simulate_path(spec: &SimulationSpec, index: usize) -> Result<Path> {
    let seed = spec.base_seed.wrapping_add(index as u64);
    let d = spec.build_distribution()?;
    match &spec.coefficients {
        None => translation_path(&d, &spec.grid, spec.scheme, seed),
        Some(coef) => sde_path(coef, &d, &spec.grid, spec.scheme, spec.x0, seed),
    }
}

/// Simulate the full ensemble described by `spec`. Deterministic per
/// (base_seed, path index); thread count does not affect the result.
pub fn simulate_ensemble(spec: &SimulationSpec) -> Result<Ensemble> {
    spec.validate()?;
    let d = spec.build_distribution()?;
    let results: Vec<Result<Path>> = (0..spec.n_paths)
        .into_par_iter()
        .map(|i| {
            let seed = spec.base_seed.wrapping_add(i as u64);
            match &spec.coefficients {
                None => translation_path(&d, &spec.grid, spec.scheme, seed),
                Some(coef) => sde_path(coef, &d, &spec.grid, spec.scheme, spec.x0, seed),
            }
        })
        .collect();

    let mut paths = Vec::with_capacity(spec.n_paths);
    let mut aborted = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(p) => paths.push(p),
            Err(Error::PathAborted { step }) => aborted.push((i, step)),
            Err(e) => return Err(e),
        }
    }
    Ok(Ensemble {
        spec: spec.clone(),
        paths,
        aborted,
    })
}

/// Map a reducer over every path of a spec without keeping the whole
/// ensemble in memory; results come back in path-index order.
pub fn map_paths<T, F>(spec: &SimulationSpec, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Path) -> T + Sync,
{
    spec.validate()?;
    let d = spec.build_distribution()?;
    (0..spec.n_paths)
        .into_par_iter()
        .map(|i| {
            let seed = spec.base_seed.wrapping_add(i as u64);
            let path = match &spec.coefficients {
                None => translation_path(&d, &spec.grid, spec.scheme, seed)?,
                Some(coef) => sde_path(coef, &d, &spec.grid, spec.scheme, spec.x0, seed)?,
            };
            Ok(f(&path))
        })
        .collect()
}
