//! Adaptive quadrature used for moment verification.
//!
//! Moments over the whole real line go through the substitution x = sinh(y),
//! which compresses both exponential and power-law tails into an integrand
//! that decays fast enough for adaptive Simpson on a finite interval.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tol`. The interval is pre-split into `seed` panels so narrow features are
/// not missed by the first coarse estimate.
#[cfg(test)]
pub(crate) fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    seed: usize,
) -> Result<f64> {
    let n = seed.max(1);
    let edges: Vec<f64> = (0..=n).map(|i| a + i as f64 * (b - a) / n as f64).collect();
    adaptive_simpson_with_edges(f, &edges, tol)
}

/// Adaptive Simpson over the panels defined by `edges`.
pub(crate) fn adaptive_simpson_with_edges<F: Fn(f64) -> f64>(
    f: &F,
    edges: &[f64],
    tol: f64,
) -> Result<f64> {
    let n = edges.len() - 1;
    let mut total = 0.0;
    for i in 0..n {
        let lo = edges[i];
        let hi = edges[i + 1];
        let mid = 0.5 * (lo + hi);
        let flo = f(lo);
        let fmid = f(mid);
        let fhi = f(hi);
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += simpson_recurse(f, lo, hi, flo, fmid, fhi, whole, tol / n as f64, MAX_DEPTH)?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || (b - a) < 1e-14 {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::numeric(format!(
            "adaptive quadrature did not converge on [{a}, {b}]"
        )));
    }
    Ok(
        simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?,
    )
}

/// Integral of x^k f(x) over the real line, where `ln_f` returns the log
/// density (or -inf where the density underflows). Evaluated through the
/// x = sinh(y) substitution in log space so extreme tails neither overflow
/// nor produce inf * 0.
pub(crate) fn real_line_moment<F: Fn(f64) -> f64>(ln_f: &F, k: u32, tol: f64) -> Result<f64> {
    let g = |y: f64| {
        let x = y.sinh();
        let lf = ln_f(x);
        if !lf.is_finite() {
            return 0.0;
        }
        let ln_jac = y.cosh().ln();
        let magnitude = if k == 0 {
            (lf + ln_jac).exp()
        } else {
            if x == 0.0 {
                return 0.0;
            }
            (lf + ln_jac + k as f64 * x.abs().ln()).exp()
        };
        if k % 2 == 1 && x < 0.0 {
            -magnitude
        } else {
            magnitude
        }
    };
    // dense seed panels where the mass lives: a sharply peaked density (scale
    // down to ~0.02) must straddle several probe points or the adaptive
    // refinement can terminate on a spuriously flat panel
    let mut edges = Vec::with_capacity(417);
    edges.push(-250.0);
    for i in 0..=3 {
        edges.push(-128.0 + i as f64 * 40.0);
    }
    for i in 0..=400 {
        edges.push(-8.0 + i as f64 * 0.04);
    }
    for i in 1..=3 {
        edges.push(8.0 + i as f64 * 40.0);
    }
    edges.push(250.0);
    adaptive_simpson_with_edges(&g, &edges, tol)
}
