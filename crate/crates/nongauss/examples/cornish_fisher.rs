//! Cornish-Fisher view of the transform: the deviation polynomial delta(x)
//! measures how far a law's quantiles bend away from the Gaussian ones, and
//! the truncated expansion b + sqrt(t) delta(b/sqrt(t)) approximates the
//! exact transform when the cumulants are small.

use nongauss::translation::{
    cornish_fisher_deviation, cornish_fisher_transform, kurtosis_sensitivity, skew_sensitivity,
    transform, CornishFisherCoeffs,
};
use nongauss::StandardizedDistribution;

fn main() -> nongauss::Result<()> {
    // mild excess kurtosis: t with 30 degrees of freedom
    let d = StandardizedDistribution::student_t(30.0)?;
    let coeffs = CornishFisherCoeffs::of(&d);
    println!(
        "t(30): kappa3 = {}, kappa4 = {:.5}",
        coeffs.skew, coeffs.kurt
    );

    let t = 4.0f64;
    println!(
        "\n{:>6} {:>12} {:>12} {:>12} {:>10} {:>10}",
        "x", "delta(x)", "exact", "expansion", "d/dk3", "d/dk4"
    );
    for i in -8..=8 {
        let x = i as f64 / 4.0;
        let b = x * t.sqrt();
        println!(
            "{x:>6.2} {:>12.6} {:>12.6} {:>12.6} {:>10.4} {:>10.4}",
            cornish_fisher_deviation(x, coeffs),
            transform(b, t, &d)?,
            cornish_fisher_transform(b, t, coeffs)?,
            skew_sensitivity(b, t)?,
            kurtosis_sensitivity(b, t)?,
        );
    }

    let mut worst = 0.0f64;
    for i in -200..=200 {
        let x = i as f64 / 100.0;
        let b = x * t.sqrt();
        worst = worst.max((transform(b, t, &d)? - cornish_fisher_transform(b, t, coeffs)?).abs());
    }
    println!("\nmax |exact - expansion| over x in [-2, 2]: {worst:.5}");
    Ok(())
}
