// Far-field coefficients `F_n` and near-field residuals `A_n + E_n` as the
// multipole truncation `N` grows.

use quietzone::amplitudes::{amplitudes_planewave, PTruncation};
use quietzone::diagnostics::{DiagnosticsReport, DEFAULT_RANGE};
use quietzone::geometry::symmetric_config;

pub fn run_example() -> quietzone::Result<()> {
    let psi = 7f64.to_radians();
    for m in [3, 4] {
        let config = symmetric_config(m, 1.0, 1.0)?;
        println!("M = {m}");
        println!(
            "{:>5} {:>12} {:>12} {:>12} {:>12}",
            "N", "max|F_n|", "sigma_r", "max|A+E|", "weighted"
        );
        for n in [5, 10, 20, 40] {
            let amps = amplitudes_planewave(&config, psi, n, PTruncation::Adaptive)?;
            let r = DiagnosticsReport::compute(&amps, DEFAULT_RANGE)?;
            println!(
                "{n:>5} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}",
                r.max_farfield(),
                r.sigma_r,
                r.max_residual(),
                r.max_weighted_residual()
            );
        }
    }
    Ok(())
}

fn main() -> quietzone::Result<()> {
    run_example()
}
