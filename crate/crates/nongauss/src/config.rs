//! Simulation specs and the flat key-value configuration format.
//!
//! A spec is serialized as `key = value` lines; flags override file values.
//! Distribution descriptors use the compact form
//! `student_t{nu=10}`, `asym_laplace{kappa=9}`, `egb2{p=0.95,q=0.45}`,
//! `gaussian{}`. Specs round-trip losslessly: numbers are printed in
//! shortest round-trip decimal form.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::dist::{Family, StandardizedDistribution};
use crate::error::{Error, Result};
use crate::sde::{CoefficientSpec, DiffusionSpec, DriftSpec, Scheme, TimeGrid};

/// Kinds of output files a run can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OutputKind {
    PathsCsv,
    EndpointsCsv,
    HistogramCsv,
    ReportJson,
}

impl OutputKind {
    pub fn key(&self) -> &'static str {
        match self {
            OutputKind::PathsCsv => "paths_csv",
            OutputKind::EndpointsCsv => "endpoints_csv",
            OutputKind::HistogramCsv => "histogram_csv",
            OutputKind::ReportJson => "report_json",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "paths_csv" => Ok(OutputKind::PathsCsv),
            "endpoints_csv" => Ok(OutputKind::EndpointsCsv),
            "histogram_csv" => Ok(OutputKind::HistogramCsv),
            "report_json" => Ok(OutputKind::ReportJson),
            other => Err(Error::config(
                "out",
                format!("unknown output kind `{other}`"),
            )),
        }
    }
}

/// Full description of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSpec {
    pub family: Family,
    pub grid: TimeGrid,
    pub scheme: Scheme,
    pub n_paths: usize,
    pub base_seed: u64,
    pub coefficients: Option<CoefficientSpec>,
    pub x0: f64,
    pub outputs: Vec<(OutputKind, PathBuf)>,
    pub quantile_table: bool,
}

impl SimulationSpec {
    /// Minimal spec with no outputs and no outer SDE coefficients.
    pub fn basic(
        family: Family,
        grid: TimeGrid,
        scheme: Scheme,
        n_paths: usize,
        base_seed: u64,
    ) -> Self {
        SimulationSpec {
            family,
            grid,
            scheme,
            n_paths,
            base_seed,
            coefficients: None,
            x0: 0.0,
            outputs: Vec::new(),
            quantile_table: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(Error::config("paths", "n_paths must be >= 1"));
        }
        if self.coefficients.is_some()
            && !matches!(self.scheme, Scheme::RwDrift | Scheme::RwNoDrift)
        {
            return Err(Error::config(
                "scheme",
                format!(
                    "scheme `{}` cannot drive an outer SDE; use rw_drift or rw_nodrift",
                    self.scheme
                ),
            ));
        }
        for (_, path) in &self.outputs {
            if path.as_os_str().is_empty() {
                return Err(Error::config("out", "output path must be nonempty"));
            }
        }
        Ok(())
    }

    /// Construct the standardized distribution, attaching the quantile table
    /// when the spec asks for it.
    pub fn build_distribution(&self) -> Result<StandardizedDistribution> {
        let d = StandardizedDistribution::from_family(self.family)?;
        if self.quantile_table {
            d.with_quantile_table()
        } else {
            Ok(d)
        }
    }

    /// Serialize to the flat key-value format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dist = {}\n", self.family));
        out.push_str(&format!("dt = {}\n", self.grid.dt()));
        out.push_str(&format!("n_steps = {}\n", self.grid.n_steps()));
        out.push_str(&format!("scheme = {}\n", self.scheme));
        out.push_str(&format!("paths = {}\n", self.n_paths));
        out.push_str(&format!("seed = {}\n", self.base_seed));
        out.push_str(&format!("x0 = {}\n", self.x0));
        out.push_str(&format!("quantile_table = {}\n", self.quantile_table));
        if let Some(coef) = &self.coefficients {
            out.push_str(&format!("alpha = {}\n", format_drift(&coef.drift)));
            out.push_str(&format!("sigma = {}\n", format_diffusion(&coef.diffusion)));
        }
        for (kind, path) in &self.outputs {
            out.push_str(&format!("out.{} = {}\n", kind.key(), path.display()));
        }
        out
    }

    /// Parse the flat key-value format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut fields: BTreeMap<String, String> = BTreeMap::new();
        let mut outputs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::config(
                    format!("line {}", lineno + 1),
                    format!("expected `key = value`, got `{line}`"),
                ));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if let Some(kind) = key.strip_prefix("out.") {
                outputs.push((OutputKind::parse(kind)?, PathBuf::from(value)));
            } else {
                fields.insert(key, value);
            }
        }

        let mut known = |k: &str| fields.remove(k);

        let family = parse_family(
            &known("dist").ok_or_else(|| Error::config("dist", "missing required field"))?,
        )?;
        let dt = parse_f64(
            "dt",
            &known("dt").ok_or_else(|| Error::config("dt", "missing required field"))?,
        )?;
        let n_steps = parse_usize(
            "n_steps",
            &known("n_steps").ok_or_else(|| Error::config("n_steps", "missing required field"))?,
        )?;
        let grid =
            TimeGrid::new(dt, n_steps).map_err(|e| Error::config("dt/n_steps", e.to_string()))?;
        let scheme = match known("scheme") {
            Some(s) => Scheme::parse(&s)?,
            None => Scheme::ExactTransform,
        };
        let n_paths = match known("paths") {
            Some(s) => parse_usize("paths", &s)?,
            None => 1,
        };
        let base_seed = match known("seed") {
            Some(s) => s
                .parse::<u64>()
                .map_err(|_| Error::config("seed", format!("`{s}` is not a u64")))?,
            None => 0,
        };
        let x0 = match known("x0") {
            Some(s) => parse_f64("x0", &s)?,
            None => 0.0,
        };
        let quantile_table = match known("quantile_table") {
            Some(s) => parse_bool("quantile_table", &s)?,
            None => false,
        };
        let alpha = known("alpha").map(|s| parse_drift(&s)).transpose()?;
        let sigma = known("sigma").map(|s| parse_diffusion(&s)).transpose()?;
        let coefficients = match (alpha, sigma) {
            (None, None) => None,
            (a, s) => Some(CoefficientSpec {
                drift: a.unwrap_or(DriftSpec::Zero),
                diffusion: s.unwrap_or(DiffusionSpec::Constant(1.0)),
            }),
        };
        if let Some(key) = fields.keys().next() {
            return Err(Error::config(key.clone(), "unknown field"));
        }

        let spec = SimulationSpec {
            family,
            grid,
            scheme,
            n_paths,
            base_seed,
            coefficients,
            x0,
            outputs,
            quantile_table,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_f64(field: &str, s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::config(field, format!("`{s}` is not a number")))
        .and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::config(field, format!("`{s}` is not finite")))
            }
        })
}

fn parse_usize(field: &str, s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::config(field, format!("`{s}` is not a nonnegative integer")))
}

fn parse_bool(field: &str, s: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::config(field, format!("`{s}` is not true/false"))),
    }
}

/// Parse `name{key=value,...}` into name and argument map.
fn parse_braced(desc: &str, field: &str) -> Result<(String, BTreeMap<String, f64>)> {
    let desc = desc.trim();
    let (name, rest) = match desc.find('{') {
        Some(i) => (&desc[..i], &desc[i..]),
        None => (desc, "{}"),
    };
    if !rest.ends_with('}') {
        return Err(Error::config(
            field,
            format!("`{desc}` missing closing brace"),
        ));
    }
    let inner = &rest[1..rest.len() - 1];
    let mut args = BTreeMap::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((k, v)) = part.split_once('=') else {
            return Err(Error::config(
                field,
                format!("bad argument `{part}` in `{desc}`"),
            ));
        };
        args.insert(k.trim().to_string(), parse_f64(field, v.trim())?);
    }
    Ok((name.trim().to_string(), args))
}

fn take_arg(args: &mut BTreeMap<String, f64>, key: &str, field: &str, desc: &str) -> Result<f64> {
    args.remove(key)
        .ok_or_else(|| Error::config(field, format!("`{desc}` is missing `{key}`")))
}

fn no_leftover(args: &BTreeMap<String, f64>, field: &str, desc: &str) -> Result<()> {
    if let Some(k) = args.keys().next() {
        return Err(Error::config(
            field,
            format!("unknown argument `{k}` in `{desc}`"),
        ));
    }
    Ok(())
}

/// Parse a distribution descriptor like `egb2{p=0.95,q=0.45}`.
pub fn parse_family(desc: &str) -> Result<Family> {
    let (name, mut args) = parse_braced(desc, "dist")?;
    let fam =
        match name.as_str() {
            "gaussian" => Family::Gaussian,
            "student_t" => Family::StudentT {
                nu: take_arg(&mut args, "nu", "dist", desc)?,
            },
            "asym_laplace" => Family::AsymmetricLaplace {
                kappa: take_arg(&mut args, "kappa", "dist", desc)?,
            },
            "egb2" => Family::Egb2 {
                p: take_arg(&mut args, "p", "dist", desc)?,
                q: take_arg(&mut args, "q", "dist", desc)?,
            },
            other => return Err(Error::config(
                "dist",
                format!(
                    "unknown family `{other}` (expected gaussian, student_t, asym_laplace or egb2)"
                ),
            )),
        };
    no_leftover(&args, "dist", desc)?;
    // construct once so bad shape parameters surface as config errors
    StandardizedDistribution::from_family(fam).map_err(|e| Error::config("dist", e.to_string()))?;
    Ok(fam)
}

pub fn format_drift(d: &DriftSpec) -> String {
    match d {
        DriftSpec::Zero => "zero{}".to_string(),
        DriftSpec::Constant(a) => format!("constant{{a={a}}}"),
        DriftSpec::MeanRevert { rate, level } => {
            format!("mean_revert{{theta={rate},mu={level}}}")
        }
    }
}

pub fn parse_drift(desc: &str) -> Result<DriftSpec> {
    let (name, mut args) = parse_braced(desc, "alpha")?;
    let spec = match name.as_str() {
        "zero" => DriftSpec::Zero,
        "constant" => DriftSpec::Constant(take_arg(&mut args, "a", "alpha", desc)?),
        "mean_revert" => DriftSpec::MeanRevert {
            rate: take_arg(&mut args, "theta", "alpha", desc)?,
            level: take_arg(&mut args, "mu", "alpha", desc)?,
        },
        other => {
            return Err(Error::config(
                "alpha",
                format!("unknown drift `{other}` (expected zero, constant or mean_revert)"),
            ))
        }
    };
    no_leftover(&args, "alpha", desc)?;
    Ok(spec)
}

pub fn format_diffusion(d: &DiffusionSpec) -> String {
    match d {
        DiffusionSpec::Constant(s) => format!("constant{{sigma0={s}}}"),
        DiffusionSpec::Proportional(s) => format!("proportional{{sigma0={s}}}"),
    }
}

pub fn parse_diffusion(desc: &str) -> Result<DiffusionSpec> {
    let (name, mut args) = parse_braced(desc, "sigma")?;
    let spec = match name.as_str() {
        "constant" => DiffusionSpec::Constant(take_arg(&mut args, "sigma0", "sigma", desc)?),
        "proportional" => {
            DiffusionSpec::Proportional(take_arg(&mut args, "sigma0", "sigma", desc)?)
        }
        other => {
            return Err(Error::config(
                "sigma",
                format!("unknown diffusion `{other}` (expected constant or proportional)"),
            ))
        }
    };
    no_leftover(&args, "sigma", desc)?;
    Ok(spec)
}
