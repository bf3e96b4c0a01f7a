//! Monte Carlo check of the stochastic-integral isometry: the second moment
//! of sum h dB matches the accumulated E[h^2] dt over the same ensemble.

use nongauss::{stats::ito_isometry_check, StandardizedDistribution, TimeGrid};

fn main() -> nongauss::Result<()> {
    let grid = TimeGrid::new(0.01, 1000)?;
    let n_paths = 4000;
    println!(
        "{:<24} {:>12} {:>12} {:>12} {:>8}",
        "distribution", "E[(int h dB)^2]", "int E[h^2]dt", "std error", "sigmas"
    );
    for d in [
        StandardizedDistribution::gaussian(),
        StandardizedDistribution::student_t(10.0)?.with_quantile_table()?,
        StandardizedDistribution::asymmetric_laplace(1.5)?,
        StandardizedDistribution::egb2(4.0, 0.1)?.with_quantile_table()?,
    ] {
        let (lhs, rhs, se) = ito_isometry_check(&grid, &d, n_paths, 31_337)?;
        println!(
            "{:<24} {lhs:>12.4} {rhs:>12.4} {se:>12.4} {:>8.2}",
            d.family().to_string(),
            (lhs - rhs).abs() / se
        );
    }
    Ok(())
}
