//! Experiment commands behind the CLI subcommands.

use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use serde_json::json;

use crate::checks::{self, family_label, CheckResult, Level};
use crate::config::{OutputKind, SimulationSpec};
use crate::dist::{showcase_families, Family, StandardizedDistribution};
use crate::error::Result;
use crate::output;
use crate::sde::{self, Scheme, TimeGrid};
use crate::specfun;
use crate::stats;
use crate::translation::{self, CornishFisherCoeffs};

/// Run a simulation spec and write every requested output file.
pub fn cmd_simulate(spec: &SimulationSpec) -> Result<serde_json::Value> {
    spec.validate()?;
    let started = Instant::now();
    let ensemble = sde::simulate_ensemble(spec)?;
    let endpoints = ensemble.endpoints();
    let moments = if endpoints.len() >= 4 {
        Some(stats::empirical_moments(&endpoints)?)
    } else {
        None
    };

    let report = json!({
        "spec": spec.serialize(),
        "n_paths": spec.n_paths,
        "aborted": ensemble.aborted,
        "clamp_count": ensemble.total_clamps(),
        "endpoint_moments": moments,
        "wall_time_s": started.elapsed().as_secs_f64(),
    });

    for (kind, path) in &spec.outputs {
        match kind {
            OutputKind::EndpointsCsv => {
                output::atomic_write(path, &output::endpoints_csv(&ensemble))?
            }
            OutputKind::PathsCsv => output::atomic_write(path, &output::paths_csv(&ensemble))?,
            OutputKind::HistogramCsv => {
                let table = marginal_table(spec.family, &ensemble, 80)?;
                output::atomic_write(path, &output::histogram_csv(&table))?;
            }
            OutputKind::ReportJson => output::atomic_write(path, &output::report_json(&report))?,
        }
    }
    Ok(report)
}

/// Histogram of one ensemble's endpoints against the theoretical and
/// Gaussian reference densities (used when a bare `simulate` run asks for a
/// histogram output; the endpoint sample fills all three scheme columns).
fn marginal_table(
    family: Family,
    ensemble: &sde::Ensemble,
    bins: usize,
) -> Result<output::HistogramTable> {
    let d = StandardizedDistribution::from_family(family)?;
    let t = ensemble.spec.grid.horizon();
    let endpoints = ensemble.endpoints();
    let (lo, hi) = theoretical_range(&d, t)?;
    let hist = stats::histogram(&endpoints, bins, Some((lo, hi)))?;
    let (theoretical, normal) = reference_densities(&d, t, &hist);
    Ok(output::HistogramTable {
        edges: hist.edges.clone(),
        theoretical,
        rw_drift: hist.density.clone(),
        rw_nodrift: hist.density.clone(),
        normal,
        exact: hist.density,
    })
}

fn theoretical_range(d: &StandardizedDistribution, t: f64) -> Result<(f64, f64)> {
    let sqrt_t = t.sqrt();
    Ok((sqrt_t * d.quantile(0.001)?, sqrt_t * d.quantile(0.999)?))
}

fn reference_densities(
    d: &StandardizedDistribution,
    t: f64,
    hist: &stats::Histogram,
) -> (Vec<f64>, Vec<f64>) {
    let sqrt_t = t.sqrt();
    let bins = hist.density.len();
    let mut theoretical = Vec::with_capacity(bins);
    let mut normal = Vec::with_capacity(bins);
    for i in 0..bins {
        let x = hist.bin_mid(i);
        theoretical.push(d.pdf(x / sqrt_t) / sqrt_t);
        normal.push(specfun::phi_raw(x / sqrt_t) / sqrt_t);
    }
    (theoretical, normal)
}

/// One row of the standardization-constant table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TableRow {
    pub family: String,
    pub descriptor: String,
    pub location: f64,
    pub scale: f64,
}

/// Location/scale constants for the six showcase laws, at full precision.
pub fn cmd_table1() -> Result<Vec<TableRow>> {
    showcase_families()
        .into_iter()
        .map(|family| {
            let d = StandardizedDistribution::from_family(family)?;
            Ok(TableRow {
                family: family_label(family),
                descriptor: family.to_string(),
                location: d.location(),
                scale: d.scale(),
            })
        })
        .collect()
}

/// The marginal-density study: for each showcase law simulate the
/// drift-corrected walk, the drift-free walk and the exact transform to the
/// horizon, histogram the endpoints on a shared grid and emit one CSV panel
/// per distribution (plus a Gaussian sanity panel).
pub fn cmd_figure1(
    out_dir: &FsPath,
    n_paths: usize,
    dt: f64,
    horizon: f64,
    base_seed: u64,
) -> Result<Vec<PathBuf>> {
    let grid = TimeGrid::with_horizon(dt, horizon)?;
    let bins = 80;
    let mut written = Vec::new();
    let mut panels = vec![Family::Gaussian];
    panels.extend(showcase_families());
    for (i, family) in panels.into_iter().enumerate() {
        let d = StandardizedDistribution::from_family(family)?;
        let seed = base_seed.wrapping_add(7_000_000 * i as u64);
        let endpoints = |scheme: Scheme| -> Result<Vec<f64>> {
            let mut spec = SimulationSpec::basic(family, grid, scheme, n_paths, seed);
            spec.quantile_table = !matches!(family, Family::Gaussian);
            sde::map_paths(&spec, |p| p.endpoint())
        };
        let drift = endpoints(Scheme::RwDrift)?;
        let nodrift = endpoints(Scheme::RwNoDrift)?;
        let exact = endpoints(Scheme::ExactTransform)?;

        let t = grid.horizon();
        let range = theoretical_range(&d, t)?;
        let h_drift = stats::histogram(&drift, bins, Some(range))?;
        let h_nodrift = stats::histogram(&nodrift, bins, Some(range))?;
        let h_exact = stats::histogram(&exact, bins, Some(range))?;
        let (theoretical, normal) = reference_densities(&d, t, &h_drift);
        let table = output::HistogramTable::from_histograms(
            theoretical,
            normal,
            &h_drift,
            &h_nodrift,
            &h_exact,
        );
        let path = out_dir.join(format!("figure1_{}.csv", family_label(family)));
        output::atomic_write(&path, &output::histogram_csv(&table))?;
        written.push(path);
    }
    Ok(written)
}

/// Run the named validation checks; returns the results and writes the
/// report JSON into `out_dir`.
pub fn cmd_validate(level: Level, out_dir: &FsPath) -> Result<(Vec<CheckResult>, PathBuf)> {
    let started = Instant::now();
    let results = checks::run_all(level)?;
    let passed = results.iter().all(|r| r.pass);
    let report = json!({
        "level": level.name(),
        "passed": passed,
        "checks": results,
        "wall_time_s": started.elapsed().as_secs_f64(),
    });
    let path = out_dir.join(format!("validate_{}.json", level.name()));
    output::atomic_write(&path, &output::report_json(&report))?;
    Ok((results, path))
}

/// Deviation polynomial and cumulant sensitivities on a fixed grid of
/// scaled driver values; columns `x,delta,sens_skew,sens_kurt` with
/// sensitivities evaluated at b = x sqrt(t).
pub fn cmd_cornish_fisher(skew: f64, kurt: f64, t: f64, out: Option<&FsPath>) -> Result<String> {
    let c = CornishFisherCoeffs::new(skew, kurt);
    let mut csv = String::from("x,delta,sens_skew,sens_kurt\n");
    for i in -400..=400 {
        let x = i as f64 / 100.0;
        let b = x * t.sqrt();
        let delta = translation::cornish_fisher_deviation(x, c);
        let ss = translation::skew_sensitivity(b, t)?;
        let sk = translation::kurtosis_sensitivity(b, t)?;
        csv.push_str(&format!("{x},{delta},{ss},{sk}\n"));
    }
    if let Some(path) = out {
        output::atomic_write(path, &csv)?;
    }
    Ok(csv)
}
