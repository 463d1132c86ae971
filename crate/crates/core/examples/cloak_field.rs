// Total field around a four-source cloak, written as CSV and a 16-bit PGM.
//
// Pass an output directory as the first argument; the system temp directory
// is used otherwise.

use std::path::PathBuf;

use quietzone::amplitudes::{amplitudes_planewave, PTruncation};
use quietzone::cylwave::Point2;
use quietzone::fieldgrid::{evaluate_grid, export_csv, export_pgm, CellFlag, FieldKind, GridSpec, PgmMode};
use quietzone::geometry::symmetric_config;
use quietzone::incident::IncidentField;
use quietzone::scattering::free_field;

pub fn run_example() -> quietzone::Result<()> {
    let out: PathBuf = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let psi = 17f64.to_radians();
    let k = 2.0;
    let config = symmetric_config(4, 1.0, k)?;
    let incident = IncidentField::plane_wave(psi);
    let amps = amplitudes_planewave(&config, psi, 60, PTruncation::Adaptive)?;

    let half = 2.5 * config.outer_radius();
    let spec = GridSpec::square(half, 81);
    let sources: Vec<Point2> = config.positions().collect();
    let grid = evaluate_grid(spec, FieldKind::Total, &sources, Some(2.0), |p| {
        free_field(k, &incident, Some(&amps), p)
    })?;

    let centre = free_field(k, &incident, Some(&amps), Point2::ORIGIN)?;
    let outside = free_field(k, &incident, Some(&amps), Point2::new(2.0, 0.0))?;
    println!("|u| at the origin      {:.3e}", centre.norm());
    println!("|u| at (2b, 0)         {:.12}", outside.norm());
    println!("clipped cells          {}", grid.count(CellFlag::Clipped));

    let csv = out.join("cloak_field.csv");
    let pgm = out.join("cloak_field.pgm");
    export_csv(&grid, &csv)?;
    export_pgm(&grid, PgmMode::Abs, &pgm)?;
    println!("wrote {} and {}", csv.display(), pgm.display());
    Ok(())
}

fn main() -> quietzone::Result<()> {
    run_example()
}
