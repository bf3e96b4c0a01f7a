//! What the transform does to the increment structure: unlike Brownian
//! motion, the translated process has correlated, non-stationary increments,
//! yet remains self-similar in distribution.

use nongauss::{
    sde::simulate_ensemble,
    stats::{increment_covariance, increment_variance, ks_two_sample},
    Family, Scheme, SimulationSpec, TimeGrid,
};

fn main() -> nongauss::Result<()> {
    let grid = TimeGrid::new(1.0, 6)?;
    let n_paths = 200_000;
    for family in [Family::AsymmetricLaplace { kappa: 9.0 }, Family::Gaussian] {
        let spec = SimulationSpec::basic(family, grid, Scheme::ExactTransform, n_paths, 1234);
        let e = simulate_ensemble(&spec)?;
        let (cov, cov_se) = increment_covariance(&e, 1.0, 2.0, 5.0, 6.0)?;
        let (v_early, se_early) = increment_variance(&e, 1.0, 2.0)?;
        let (v_late, se_late) = increment_variance(&e, 5.0, 6.0)?;
        println!("{family}:");
        println!(
            "  cov(Z6-Z5, Z2-Z1)   = {cov:>9.5} +- {cov_se:.5}  ({:.1} sigma from 0)",
            cov.abs() / cov_se
        );
        println!("  var(Z2-Z1)          = {v_early:>9.5} +- {se_early:.5}");
        println!(
            "  var(Z6-Z5)          = {v_late:>9.5} +- {se_late:.5}  (difference {:.1} sigma)",
            (v_late - v_early).abs() / (se_early * se_early + se_late * se_late).sqrt()
        );
    }

    // self-similarity: Z_{4T}/2 has the same law as Z_T
    let family = Family::AsymmetricLaplace { kappa: 9.0 };
    let long = simulate_ensemble(&SimulationSpec::basic(
        family,
        TimeGrid::new(0.01, 1000)?,
        Scheme::ExactTransform,
        20_000,
        777,
    ))?;
    let short = simulate_ensemble(&SimulationSpec::basic(
        family,
        TimeGrid::new(0.01, 250)?,
        Scheme::ExactTransform,
        20_000,
        778,
    ))?;
    let scaled: Vec<f64> = long.endpoints().iter().map(|z| z / 2.0).collect();
    let ks = ks_two_sample(&scaled, &short.endpoints())?;
    println!(
        "\nself-similarity: KS(Z_10 / 2, Z_2.5) = {:.5} (1% critical {:.5})",
        ks.statistic, ks.critical_1pct
    );
    Ok(())
}
