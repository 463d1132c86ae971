// Non-plane incidence: a layout read from JSON, a coefficient-table incident
// field, and the kernel contraction checked against quadrature.

use std::collections::BTreeMap;

use num_complex::Complex64;
use quietzone::amplitudes::{amplitudes_general, quadrature_oracle, PTruncation};
use quietzone::cylwave::Point2;
use quietzone::geometry::SourceConfig;
use quietzone::incident::IncidentField;

const LAYOUT: &str = r#"{
  "k": 1.5,
  "sources": [
    {"x": 1.0,  "y": 0.0,                 "a": 0.8660254037844386, "phi1": 2.6179938779914944, "phi2": 3.6651914291880923},
    {"x": -0.5, "y": 0.8660254037844387,  "a": 0.8660254037844386, "phi1": 4.7123889803846897, "phi2": 5.7595865315812871},
    {"x": -0.5, "y": -0.8660254037844384, "a": 0.8660254037844386, "phi1": 0.5235987755982989, "phi2": 1.5707963267948966}
  ]
}"#;

pub fn run_example() -> quietzone::Result<()> {
    let config = SourceConfig::from_json_str(LAYOUT)?;
    config.corner_polygon()?;

    // a few low-order regular waves with arbitrary weights
    let table: BTreeMap<i32, Complex64> = [(-2, (0.3, -0.1)), (0, (1.0, 0.0)), (1, (0.0, 0.5)), (3, (-0.2, 0.2))]
        .into_iter()
        .map(|(n, (re, im))| (n, Complex64::new(re, im)))
        .collect();
    let incident = IncidentField::coefficients(table);
    let amps = amplitudes_general(&config, &incident, 40, PTruncation::Adaptive)?;

    let mut worst: f64 = 0.0;
    for m in 0..config.len() {
        for l in -5..=5 {
            let q = quadrature_oracle(&config, &incident, m, l)?;
            worst = worst.max((q - amps.get(m, l)).norm());
        }
    }
    println!("kernel vs quadrature, max abs difference: {worst:.2e}");

    let p = Point2::new(0.05, -0.1);
    let u = incident.evaluate(config.k, p) + quietzone::amplitudes::source_field(&amps, p)?;
    println!("|u_i + u_d| near the origin: {:.2e}", u.norm());
    let far = Point2::from_polar(3.0 * config.outer_radius(), 1.0);
    println!(
        "|u_d| outside the layout:    {:.2e}",
        quietzone::amplitudes::source_field(&amps, far)?.norm()
    );
    Ok(())
}

fn main() -> quietzone::Result<()> {
    run_example()
}
