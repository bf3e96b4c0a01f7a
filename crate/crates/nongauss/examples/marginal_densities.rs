//! Marginal-density recovery study: simulate every showcase law to T = 10
//! under the drift-corrected walk, the drift-free walk and the exact
//! transform, and write one histogram CSV per panel (columns: bin edges,
//! theoretical density, the three scheme densities, and the Gaussian
//! reference). Plot-ready data, no rendering.
//!
//! Usage: cargo run --release --example marginal_densities [OUT_DIR] [N_PATHS]

use std::path::PathBuf;

use nongauss::commands::cmd_figure1;

fn main() -> nongauss::Result<()> {
    let mut args = std::env::args().skip(1);
    let out_dir = PathBuf::from(args.next().unwrap_or_else(|| "marginal_panels".into()));
    let n_paths: usize = args
        .next()
        .map(|s| s.parse().expect("N_PATHS must be an integer"))
        .unwrap_or(2000);

    let written = cmd_figure1(&out_dir, n_paths, 0.01, 10.0, 20_260_101)?;
    println!("wrote {} panels ({} paths each):", written.len(), n_paths);
    for path in written {
        println!("  {}", path.display());
    }
    println!("columns: x_left,x_right,density_theoretical,density_rw_drift,density_rw_nodrift,density_normal,density_exact");
    Ok(())
}
