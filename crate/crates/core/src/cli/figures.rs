//! Preset parameter sets for `quietzone reproduce`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::diagnostics::DiagnosticsReport;
use crate::error::{Error, Result};
use crate::fieldgrid::{GridSpec, PgmMode};
use crate::geometry::symmetric_config;
use crate::incident::IncidentField;
use crate::scattering::{Boundary, Cylinder};

use super::{render_free_field, render_scattering, scattering_problem, write_render, FieldChoice, Setup};

const DEFAULT_RENDER: usize = 401;
const SCATTER_ORDER: usize = 80;

enum Figure {
    /// Coefficient residuals over every `(M, k, N)` combination.
    Sweep {
        psi_deg: f64,
        m: &'static [usize],
        k: &'static [f64],
        n: &'static [usize],
    },
    /// Total field of a free cloak.
    Render { m: usize, k: f64, n: usize, mode: PgmMode },
    /// Cylinder with the cloak off, then on.
    Scatter { boundary: Boundary, mode: PgmMode },
}

struct Entry {
    id: &'static str,
    about: &'static str,
    figure: Figure,
}

const K15: &[f64] = &[1.0, 2.0, 3.0, 4.0, 5.0];

const FIGURES: &[Entry] = &[
    Entry {
        id: "fig5",
        about: "far-field |F_n|, M=3, psi=7 deg, k=1..5, N=10,15",
        figure: Figure::Sweep {
            psi_deg: 7.0,
            m: &[3],
            k: K15,
            n: &[10, 15],
        },
    },
    Entry {
        id: "fig6",
        about: "far-field |F_n|, M=3,8, k=1, N=5,10,15",
        figure: Figure::Sweep {
            psi_deg: 7.0,
            m: &[3, 8],
            k: &[1.0],
            n: &[5, 10, 15],
        },
    },
    Entry {
        id: "fig7",
        about: "near-field |A_n+E_n|, M=6,8, k=5, N sweep",
        figure: Figure::Sweep {
            psi_deg: 7.0,
            m: &[6, 8],
            k: &[5.0],
            n: &[20, 40, 60, 80, 100, 130],
        },
    },
    Entry {
        id: "fig8",
        about: "near-field |A_n+E_n|, M=3..6, k=1,5, N=130",
        figure: Figure::Sweep {
            psi_deg: 7.0,
            m: &[3, 4, 5, 6],
            k: &[1.0, 5.0],
            n: &[130],
        },
    },
    Entry {
        id: "fig9",
        about: "near-field |A_n+E_n|, M=4,6,8,10, k=1..5, N=130",
        figure: Figure::Sweep {
            psi_deg: 7.0,
            m: &[4, 6, 8, 10],
            k: K15,
            n: &[130],
        },
    },
    Entry {
        id: "figx1",
        about: "|total field|, M=4, k=2, N=60, clip 2",
        figure: Figure::Render {
            m: 4,
            k: 2.0,
            n: 60,
            mode: PgmMode::Abs,
        },
    },
    Entry {
        id: "figx2",
        about: "Re total field, M=4, k=10, N=60",
        figure: Figure::Render {
            m: 4,
            k: 10.0,
            n: 60,
            mode: PgmMode::Re,
        },
    },
    Entry {
        id: "figx3",
        about: "Re total field, M=4, k=10, N=10",
        figure: Figure::Render {
            m: 4,
            k: 10.0,
            n: 10,
            mode: PgmMode::Re,
        },
    },
    Entry {
        id: "figx4",
        about: "Re total field, M=4, k=10, N=5",
        figure: Figure::Render {
            m: 4,
            k: 10.0,
            n: 5,
            mode: PgmMode::Re,
        },
    },
    Entry {
        id: "figx5",
        about: "Re total field, M=7, k=10, N=5",
        figure: Figure::Render {
            m: 7,
            k: 10.0,
            n: 5,
            mode: PgmMode::Re,
        },
    },
    Entry {
        id: "fig10",
        about: "|total field|, hard cylinder a0=1, M=5, b=4, k=5, cloak off/on",
        figure: Figure::Scatter {
            boundary: Boundary::Hard,
            mode: PgmMode::Abs,
        },
    },
    Entry {
        id: "fig11",
        about: "Re total field, hard cylinder a0=1, M=5, b=4, k=5, cloak off/on",
        figure: Figure::Scatter {
            boundary: Boundary::Hard,
            mode: PgmMode::Re,
        },
    },
    Entry {
        id: "fig12",
        about: "|total field|, soft cylinder a0=1, M=5, b=4, k=5, cloak off/on",
        figure: Figure::Scatter {
            boundary: Boundary::Soft,
            mode: PgmMode::Abs,
        },
    },
];

/// Available ids with a one-line description each.
pub fn figure_ids() -> Vec<(&'static str, &'static str)> {
    FIGURES.iter().map(|e| (e.id, e.about)).collect()
}

/// Writes the artifacts of figure `id` into `out` and returns their paths.
pub fn reproduce(id: &str, out: &Path, nx: Option<usize>, ny: Option<usize>) -> Result<Vec<PathBuf>> {
    let entry = FIGURES.iter().find(|e| e.id == id).ok_or_else(|| {
        let mut msg = format!("unknown figure id {id:?}; available:");
        for e in FIGURES {
            let _ = write!(msg, "\n  {:<6} {}", e.id, e.about);
        }
        Error::Parameter(msg)
    })?;
    fs::create_dir_all(out)?;
    let nx = nx.unwrap_or(DEFAULT_RENDER);
    let ny = ny.unwrap_or(DEFAULT_RENDER);
    match entry.figure {
        Figure::Sweep { psi_deg, m, k, n } => sweep(entry.id, out, psi_deg, m, k, n),
        Figure::Render { m, k, n, mode } => {
            let setup = Setup::new(
                symmetric_config(m, 1.0, k)?,
                IncidentField::plane_wave_deg(17.0),
                Some(n),
            );
            setup.echo(entry.id);
            let spec = window(&setup, nx, ny);
            let grid = render_free_field(&setup, FieldChoice::Total, spec, 2.0)?;
            write_render(&grid, mode, out, entry.id)?;
            Ok(paths(out, entry.id))
        }
        Figure::Scatter { boundary, mode } => {
            let setup = Setup::new(
                symmetric_config(5, 4.0, 5.0)?,
                IncidentField::plane_wave_deg(17.0),
                Some(SCATTER_ORDER),
            );
            setup.echo(entry.id);
            let cylinder = Cylinder::new(1.0, boundary)?;
            let spec = window(&setup, nx, ny);
            let mut written = Vec::new();
            for (cloak, suffix) in [(false, "off"), (true, "on")] {
                let problem = scattering_problem(&setup, cylinder, cloak)?;
                let grid = render_scattering(&problem, &setup.config, spec, 2.0)?;
                let stem = format!("{}_{suffix}", entry.id);
                write_render(&grid, mode, out, &stem)?;
                written.extend(paths(out, &stem));
            }
            Ok(written)
        }
    }
}

fn window(setup: &Setup, nx: usize, ny: usize) -> GridSpec {
    let h = super::WINDOW_SCALE * setup.config.outer_radius();
    GridSpec::spanning(-h, h, -h, h, nx, ny)
}

fn paths(out: &Path, stem: &str) -> Vec<PathBuf> {
    vec![out.join(format!("{stem}.csv")), out.join(format!("{stem}.pgm"))]
}

fn sweep(id: &str, out: &Path, psi_deg: f64, ms: &[usize], ks: &[f64], ns: &[usize]) -> Result<Vec<PathBuf>> {
    let mut csv = String::from("M,k,N,n,abs_F,abs_A_plus_E,weighted_residual\n");
    for &m in ms {
        for &k in ks {
            for &n in ns {
                let setup = Setup::new(
                    symmetric_config(m, 1.0, k)?,
                    IncidentField::plane_wave_deg(psi_deg),
                    Some(n),
                );
                setup.echo(id);
                let report = DiagnosticsReport::compute(&setup.amplitudes()?, -10..=10)?;
                for (order, f) in &report.farfield {
                    let _ = writeln!(
                        csv,
                        "{m},{k},{n},{order},{:.16e},{:.16e},{:.16e}",
                        f.norm(),
                        report.residual[order],
                        report.weighted_residual[order]
                    );
                }
            }
        }
    }
    let path = out.join(format!("{id}.csv"));
    fs::write(&path, csv)?;
    Ok(vec![path])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids = figure_ids();
        for (i, (a, _)) in ids.iter().enumerate() {
            assert!(ids[i + 1..].iter().all(|(b, _)| a != b));
        }
    }

    #[test]
    fn unknown_id_lists_available() {
        let dir = tempfile::tempdir().unwrap();
        let err = reproduce("fig99", dir.path(), None, None).unwrap_err().to_string();
        assert!(err.contains("fig5") && err.contains("figx4") && err.contains("fig12"));
    }
}
