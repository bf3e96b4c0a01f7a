//! Accumulated cost of dropping the drift correction: E_T is the gap between
//! the drift-corrected and drift-free walks on a shared driver, and its rms
//! stays bounded relative to sqrt(T log T).

use nongauss::{stats::error_growth, StandardizedDistribution, TimeGrid};

fn main() -> nongauss::Result<()> {
    let grid = TimeGrid::new(0.01, 5000)?; // horizon 50
    let n_paths = 500;

    for d in [
        StandardizedDistribution::gaussian(),
        StandardizedDistribution::asymmetric_laplace(9.0)?,
        StandardizedDistribution::egb2(0.95, 0.45)?,
    ] {
        let report = error_growth(&d, &grid, n_paths, 777)?;
        println!("{} ({n_paths} paths):", d.family());
        println!("{:>8} {:>14} {:>20}", "T", "rms E_T", "rms/sqrt(T log T)");
        for ((t, rms), ratio) in report
            .horizons
            .iter()
            .zip(&report.rms_error)
            .zip(&report.bound_ratio)
        {
            println!("{t:>8} {rms:>14.6e} {ratio:>20.6e}");
        }
        println!();
    }
    Ok(())
}
