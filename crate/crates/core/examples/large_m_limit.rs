// With many small sources the amplitudes reduce to monopoles and dipoles.

use quietzone::amplitudes::{amplitudes_planewave, large_m_amplitudes, PTruncation};
use quietzone::geometry::symmetric_config;
use quietzone::incident::IncidentField;

pub fn run_example() -> quietzone::Result<()> {
    let psi = 17f64.to_radians();
    let incident = IncidentField::plane_wave(psi);
    println!("{:>4} {:>8} {:>12} {:>12}", "M", "ka", "|l|>=2 share", "l<=1 error");
    for m in [16, 32, 64, 128] {
        let config = symmetric_config(m, 1.0, 1.0)?;
        let ka = config.k * config.sources[0].radius;
        let full = amplitudes_planewave(&config, psi, 4, PTruncation::Adaptive)?;
        let limit = large_m_amplitudes(&config, &incident)?;

        let mut high: f64 = 0.0;
        let mut mono: f64 = 0.0;
        let mut err: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for s in 0..m {
            mono = mono.max(full.get(s, 0).norm());
            for l in -4..=4i32 {
                if l.abs() >= 2 {
                    high = high.max(full.get(s, l).norm());
                } else {
                    err = err.max((full.get(s, l) - limit.get(s, l)).norm());
                    scale = scale.max(full.get(s, l).norm());
                }
            }
        }
        println!("{m:>4} {ka:>8.4} {:>12.3e} {:>12.3e}", high / mono, err / scale);
    }
    Ok(())
}

fn main() -> quietzone::Result<()> {
    run_example()
}
