// The matrix taking incident coefficients to far-field coefficients vanishes
// for the cloaking amplitudes.

use quietzone::amplitudes::{KernelTable, PTruncation};
use quietzone::diagnostics::{hermitian_residual, scattering_matrix};
use quietzone::geometry::symmetric_config;

pub fn run_example() -> quietzone::Result<()> {
    let config = symmetric_config(4, 1.0, 1.0)?;
    let table = KernelTable::new(&config, PTruncation::Adaptive);
    for n in [5, 10, 20, 40] {
        let s = scattering_matrix(&config, -5..=5, n, Some(&table))?;
        let largest = s.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        println!(
            "N = {n:>2}: max|S_pq| = {largest:.3e}, hermitian residual = {:.3e}",
            hermitian_residual(&s)
        );
    }
    println!("kernel entries cached: {}", table.cached_entries());
    Ok(())
}

fn main() -> quietzone::Result<()> {
    run_example()
}
