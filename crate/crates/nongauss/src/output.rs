//! CSV/JSON emission.
//!
//! Files are written atomically (temp file + rename) and numbers are printed
//! in shortest round-trip decimal form, so identical runs produce
//! byte-identical files.
//!
//! Fixed CSV schemas:
//!
//! - endpoints: `path_index,seed,t,value,clamps`
//! - paths:     `path_index,k,t,b,z`
//! - histogram: `x_left,x_right,density_theoretical,density_rw_drift,
//!   density_rw_nodrift,density_normal,density_exact`

use std::fmt::Write as _;
use std::fs;
use std::path::Path as FsPath;

use crate::error::Result;
use crate::sde::Ensemble;
use crate::stats::Histogram;

/// Write `contents` to `path` via a temp file in the same directory.
pub fn atomic_write(path: &FsPath, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = FsPath::new(&tmp).to_path_buf();
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub const ENDPOINTS_HEADER: &str = "path_index,seed,t,value,clamps";
pub const PATHS_HEADER: &str = "path_index,k,t,b,z";
pub const HISTOGRAM_HEADER: &str = "x_left,x_right,density_theoretical,density_rw_drift,density_rw_nodrift,density_normal,density_exact";

pub fn endpoints_csv(e: &Ensemble) -> String {
    let t = e.spec.grid.horizon();
    let mut out = String::with_capacity(32 * e.paths.len());
    out.push_str(ENDPOINTS_HEADER);
    out.push('\n');
    for (i, p) in e.paths.iter().enumerate() {
        let _ = writeln!(out, "{i},{},{t},{},{}", p.seed, p.endpoint(), p.clamp_count);
    }
    out
}

pub fn paths_csv(e: &Ensemble) -> String {
    let grid = &e.spec.grid;
    let mut out = String::new();
    out.push_str(PATHS_HEADER);
    out.push('\n');
    for (i, p) in e.paths.iter().enumerate() {
        for k in 0..grid.n_steps() {
            let b = p.driver.as_ref().map_or(f64::NAN, |d| d[k]);
            let _ = writeln!(out, "{i},{},{},{b},{}", k + 1, grid.time(k), p.values[k]);
        }
    }
    out
}

/// One panel of marginal-density data: shared bins, theoretical and Normal
/// reference densities, plus the three simulated schemes.
pub struct HistogramTable {
    pub edges: Vec<f64>,
    pub theoretical: Vec<f64>,
    pub rw_drift: Vec<f64>,
    pub rw_nodrift: Vec<f64>,
    pub normal: Vec<f64>,
    pub exact: Vec<f64>,
}

impl HistogramTable {
    pub fn from_histograms(
        theoretical: Vec<f64>,
        normal: Vec<f64>,
        drift: &Histogram,
        nodrift: &Histogram,
        exact: &Histogram,
    ) -> Self {
        HistogramTable {
            edges: drift.edges.clone(),
            theoretical,
            rw_drift: drift.density.clone(),
            rw_nodrift: nodrift.density.clone(),
            normal,
            exact: exact.density.clone(),
        }
    }
}

pub fn histogram_csv(table: &HistogramTable) -> String {
    let mut out = String::new();
    out.push_str(HISTOGRAM_HEADER);
    out.push('\n');
    for i in 0..table.theoretical.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            table.edges[i],
            table.edges[i + 1],
            table.theoretical[i],
            table.rw_drift[i],
            table.rw_nodrift[i],
            table.normal[i],
            table.exact[i]
        );
    }
    out
}

pub fn report_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}
