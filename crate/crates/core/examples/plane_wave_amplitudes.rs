// Source amplitudes for a plane wave hitting a four-source cloak, checked
// against direct quadrature of the arc integral.

use quietzone::amplitudes::{amplitudes_planewave, quadrature_oracle, PTruncation};
use quietzone::geometry::symmetric_config;
use quietzone::incident::IncidentField;

pub fn run_example() -> quietzone::Result<()> {
    let psi = 17f64.to_radians();
    let config = symmetric_config(4, 1.0, 2.0)?;
    let amps = amplitudes_planewave(&config, psi, 6, PTruncation::Adaptive)?;
    let incident = IncidentField::plane_wave(psi);

    println!(
        "M = {}, a = {:.6}, N = {}",
        config.len(),
        config.sources[0].radius,
        amps.order()
    );
    println!(
        "{:>3} {:>3} {:>24} {:>24} {:>10}",
        "m", "l", "closed form", "quadrature", "rel diff"
    );
    let mut worst: f64 = 0.0;
    for m in 0..config.len() {
        for l in -6..=6 {
            let closed = amps.get(m, l);
            let quad = quadrature_oracle(&config, &incident, m, l)?;
            let rel = (closed - quad).norm() / closed.norm().max(1e-4);
            worst = worst.max(rel);
            if m == 0 {
                println!(
                    "{m:>3} {l:>3} {:>24} {:>24} {rel:>10.2e}",
                    format!("{closed:.6e}"),
                    format!("{quad:.6e}")
                );
            }
        }
    }
    println!("largest relative difference over all sites: {worst:.2e}");
    assert!(worst < 1e-8);
    Ok(())
}

fn main() -> quietzone::Result<()> {
    run_example()
}
