use num_complex::Complex64;
use proptest::prelude::*;
use quietzone::amplitudes::{amplitudes_planewave, source_field, PTruncation};
use quietzone::cylwave::Point2;
use quietzone::fieldgrid::{evaluate_grid, export_csv, read_csv, CellFlag, FieldKind, GridSpec};
use quietzone::geometry::symmetric_config;
use quietzone::incident::IncidentField;
use quietzone::scattering::free_field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn grid_cells_equal_pointwise_evaluation() {
    let psi = 17f64.to_radians();
    let c = symmetric_config(4, 1.0, 2.0).unwrap();
    let amps = amplitudes_planewave(&c, psi, 20, PTruncation::Adaptive).unwrap();
    let spec = GridSpec::square(2.5 * c.outer_radius(), 41);
    let sources: Vec<Point2> = c.positions().collect();
    let grid = evaluate_grid(spec, FieldKind::Source, &sources, Some(2.0), |p| source_field(&amps, p)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (i, j) = (rng.gen_range(0..41), rng.gen_range(0..41));
        if grid.flag(i, j) == CellFlag::Singular {
            continue;
        }
        assert_eq!(grid.get(i, j), source_field(&amps, spec.point(i, j)).unwrap());
    }
}

#[test]
fn cloak_render_cells() {
    let psi = 17f64.to_radians();
    let c = symmetric_config(4, 1.0, 2.0).unwrap();
    let f = IncidentField::plane_wave(psi);
    let amps = amplitudes_planewave(&c, psi, 60, PTruncation::Adaptive).unwrap();
    let spec = GridSpec::spanning(-2.0, 2.0, -2.0, 2.0, 5, 5);
    let grid = evaluate_grid(spec, FieldKind::Total, &[], Some(2.0), |p| {
        free_field(2.0, &f, Some(&amps), p)
    })
    .unwrap();
    assert_eq!(spec.point(2, 2), Point2::ORIGIN);
    assert!(grid.get(2, 2).norm() < 1e-6);
    assert_eq!(spec.point(4, 2), Point2::new(2.0, 0.0));
    assert!((grid.get(4, 2).norm() - 1.0).abs() < 1e-6);
}

#[test]
fn singular_cells_exported_with_flag() {
    let spec = GridSpec::spanning(0.0, 1.0, 0.0, 0.0, 2, 1);
    let grid = evaluate_grid(spec, FieldKind::Custom, &[Point2::new(1.0, 0.0)], None, |_| {
        Ok(Complex64::new(1.0, 0.0))
    })
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    export_csv(&grid, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().nth(2).unwrap().ends_with(",S"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn csv_round_trip_is_exact(nx in 1usize..6, ny in 1usize..6, seed in any::<u64>(),
                               x0 in -10.0f64..10.0, dx in 1e-3f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<Complex64> = (0..nx * ny)
            .map(|_| Complex64::new(rng.gen_range(-1e3..1e3) * 1e-7, rng.gen_range(-5.0..5.0)))
            .collect();
        let spec = GridSpec { origin: Point2::new(x0, -x0), dx, dy: dx * 0.7, nx, ny };
        let grid = evaluate_grid(spec, FieldKind::Custom, &[], Some(1.0), |p| {
            let i = ((p.x - x0) / dx).round() as usize;
            let j = ((p.y + x0) / (dx * 0.7)).round() as usize;
            Ok(values[j * nx + i])
        }).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.csv");
        export_csv(&grid, &path).unwrap();
        let cells = read_csv(&path).unwrap();
        prop_assert_eq!(cells.len(), nx * ny);
        for (idx, cell) in cells.iter().enumerate() {
            prop_assert_eq!(cell.value, grid.samples[idx]);
            prop_assert_eq!(cell.flag, grid.flags[idx]);
            prop_assert_eq!(cell.point, spec.point(idx % nx, idx / nx));
        }
    }
}
