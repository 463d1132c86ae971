// A rigid and a soft cylinder inside a five-source cloak: scattered far-field
// flux with the cloak off and on.

use quietzone::amplitudes::{amplitudes_planewave, PTruncation};
use quietzone::cylwave::Point2;
use quietzone::diagnostics::farfield_flux;
use quietzone::geometry::symmetric_config;
use quietzone::incident::IncidentField;
use quietzone::scattering::{Boundary, Cylinder, ScatteringProblem};

pub fn run_example() -> quietzone::Result<()> {
    let psi = 17f64.to_radians();
    let config = symmetric_config(5, 4.0, 5.0)?;
    let incident = IncidentField::plane_wave(psi);
    let amps = amplitudes_planewave(&config, psi, 60, PTruncation::Adaptive)?;
    let probe = Point2::from_polar(2.0 * config.outer_radius(), 0.3);

    for boundary in [Boundary::Hard, Boundary::Soft] {
        let cyl = Cylinder::new(1.0, boundary)?;
        let off = ScatteringProblem::bare(config.k, cyl, incident.clone())?;
        let on = ScatteringProblem::cloaked(cyl, amps.clone())?;
        let flux_off = farfield_flux(off.scattered_coefficients());
        let flux_on = farfield_flux(on.scattered_coefficients());
        println!("{boundary:?} cylinder");
        println!("  scattered flux, cloak off  {flux_off:.4e}");
        println!("  scattered flux, cloak on   {flux_on:.4e}");
        println!("  ratio                      {:.3e}", flux_on / flux_off);
        let u = on.total_field(probe)?;
        println!(
            "  |u - u_i| far outside      {:.3e}",
            (u - incident.evaluate(config.k, probe)).norm()
        );
    }
    Ok(())
}

fn main() -> quietzone::Result<()> {
    run_example()
}
