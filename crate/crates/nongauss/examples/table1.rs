//! Standardization constants for the showcase laws: the location m and
//! scale s that pin each family member to mean 0 and variance 1, plus the
//! standardized cumulants and a numerical verification of the constraint.

use nongauss::{dist::showcase_families, StandardizedDistribution};

fn main() -> nongauss::Result<()> {
    println!(
        "{:<24} {:>12} {:>12} {:>10} {:>10} {:>12} {:>12}",
        "distribution", "location", "scale", "kappa3", "kappa4", "quad mean", "quad var"
    );
    for family in showcase_families() {
        let d = StandardizedDistribution::from_family(family)?;
        let (k3, k4) = d.cumulants();
        let (mean, var) = d.standardization_check()?;
        println!(
            "{:<24} {:>12.6} {:>12.6} {:>10.4} {:>10.4} {:>12.2e} {:>12.6}",
            family.to_string(),
            d.location(),
            d.scale(),
            k3,
            k4,
            mean,
            var
        );
    }
    Ok(())
}
