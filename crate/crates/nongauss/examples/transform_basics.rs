//! The pointwise machinery: the transform sqrt(t) F^{-1}(Phi(b/sqrt(t))),
//! its derivative h (the diffusion modulator), the Ito drift correction r,
//! and how all three degenerate for the Gaussian member.

use nongauss::translation::{diffusion_modulator, drift_correction, ito_partials, transform};
use nongauss::StandardizedDistribution;

fn main() -> nongauss::Result<()> {
    let al = StandardizedDistribution::asymmetric_laplace(1.5)?;
    let gauss = StandardizedDistribution::gaussian();
    let t = 2.0;

    println!("asymmetric Laplace (kappa = 1.5) at t = {t}:");
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "b", "Z=g(b,t)", "h", "r", "d2g/dy2"
    );
    for i in -4..=4 {
        let b = i as f64 * 0.75;
        let z = transform(b, t, &al)?;
        let h = diffusion_modulator(b, t, &al)?;
        let r = drift_correction(b, t, &al)?;
        let p = ito_partials(b, t, &al)?;
        println!("{b:>6.2} {z:>12.6} {h:>12.6} {r:>12.6} {:>12.6}", p.d2g_dy2);
    }

    println!("\nGaussian member (identity transform, unit modulator, zero drift):");
    for b in [-2.0, 0.5, 3.0] {
        println!(
            "  b = {b:>5.2}: Z - b = {:+.2e}, h - 1 = {:+.2e}, r = {:+.2e}",
            transform(b, t, &gauss)? - b,
            diffusion_modulator(b, t, &gauss)? - 1.0,
            drift_correction(b, t, &gauss)?
        );
    }

    // the drift identity: r equals dg/dt + d2g/dy2 / 2 everywhere
    let p = ito_partials(0.7, t, &al)?;
    let r = drift_correction(0.7, t, &al)?;
    println!(
        "\ndrift identity at (0.7, {t}): dg_dt + d2g_dy2/2 - r = {:+.2e}",
        p.dg_dt + 0.5 * p.d2g_dy2 - r
    );
    Ok(())
}
