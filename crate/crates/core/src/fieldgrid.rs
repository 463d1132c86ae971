//! Sampling a field on a rectangular grid and writing CSV / PGM images.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cylwave::Point2;
use crate::error::{Error, Result};

/// Cells closer than this to a singular point are not evaluated.
pub const SINGULAR_RADIUS: f64 = 1e-9;

/// Grid geometry: cell `(i, j)` sits at `origin + (i dx, j dy)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub origin: Point2,
    pub dx: f64,
    pub dy: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// `nx × ny` cells spanning `[x0, x1] × [y0, y1]` including the edges.
    pub fn spanning(x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> Self {
        let step = |lo: f64, hi: f64, n: usize| if n > 1 { (hi - lo) / (n - 1) as f64 } else { 1.0 };
        Self {
            origin: Point2::new(x0, y0),
            dx: step(x0, x1, nx),
            dy: step(y0, y1, ny),
            nx,
            ny,
        }
    }

    /// Square window `[−h, h]²`.
    pub fn square(half_width: f64, n: usize) -> Self {
        Self::spanning(-half_width, half_width, -half_width, half_width, n, n)
    }

    pub fn point(&self, i: usize, j: usize) -> Point2 {
        Point2::new(self.origin.x + i as f64 * self.dx, self.origin.y + j as f64 * self.dy)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Parameter("grid has no cells".into()));
        }
        if !(self.dx > 0.0 && self.dy > 0.0 && self.dx.is_finite() && self.dy.is_finite()) {
            return Err(Error::Parameter(format!(
                "grid spacing must be positive, got {} x {}",
                self.dx, self.dy
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellFlag {
    Ok,
    /// `|value|` exceeds the clip level.
    Clipped,
    /// Within [`SINGULAR_RADIUS`] of a singular point; the value is 0.
    Singular,
    /// The evaluator failed; the value is 0.
    Failed,
}

impl CellFlag {
    pub fn code(self) -> char {
        match self {
            CellFlag::Ok => '-',
            CellFlag::Clipped => 'C',
            CellFlag::Singular => 'S',
            CellFlag::Failed => 'X',
        }
    }

    pub fn from_code(c: &str) -> Option<Self> {
        match c {
            "-" => Some(CellFlag::Ok),
            "C" => Some(CellFlag::Clipped),
            "S" => Some(CellFlag::Singular),
            "X" => Some(CellFlag::Failed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    Incident,
    Source,
    Scattered,
    Total,
    Custom,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FieldKind::Incident => "incident",
            FieldKind::Source => "source",
            FieldKind::Scattered => "scattered",
            FieldKind::Total => "total",
            FieldKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmMode {
    Abs,
    Re,
}

impl std::str::FromStr for PgmMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abs" => Ok(PgmMode::Abs),
            "re" => Ok(PgmMode::Re),
            other => Err(Error::Parameter(format!("mode must be abs or re, got {other:?}"))),
        }
    }
}

/// Samples stored row-major from the bottom row (`j = 0`) up.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub samples: Vec<Complex64>,
    pub flags: Vec<CellFlag>,
    pub clip: Option<f64>,
    pub kind: FieldKind,
}

impl FieldGrid {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.samples[j * self.spec.nx + i]
    }

    pub fn flag(&self, i: usize, j: usize) -> CellFlag {
        self.flags[j * self.spec.nx + i]
    }

    pub fn count(&self, flag: CellFlag) -> usize {
        self.flags.iter().filter(|f| **f == flag).count()
    }
}

/// Evaluates `field` at every cell centre.
///
/// Cells near one of `singular` are flagged rather than evaluated; evaluator
/// errors are flagged too, so a whole image is always produced.
pub fn evaluate_grid<F>(
    spec: GridSpec,
    kind: FieldKind,
    singular: &[Point2],
    clip: Option<f64>,
    field: F,
) -> Result<FieldGrid>
where
    F: Fn(Point2) -> Result<Complex64> + Sync,
{
    spec.validate()?;
    if let Some(c) = clip {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Parameter(format!("clip level must be positive, got {c}")));
        }
    }
    let cells: Vec<(Complex64, CellFlag)> = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let p = spec.point(idx % spec.nx, idx / spec.nx);
            if singular.iter().any(|s| s.distance(p) < SINGULAR_RADIUS) {
                return (Complex64::default(), CellFlag::Singular);
            }
            match field(p) {
                Ok(v) if clip.is_some_and(|c| v.norm() > c) => (v, CellFlag::Clipped),
                Ok(v) => (v, CellFlag::Ok),
                Err(e) => {
                    log::debug!("cell ({:.6}, {:.6}): {e}", p.x, p.y);
                    (Complex64::default(), CellFlag::Failed)
                }
            }
        })
        .collect();
    let (samples, flags) = cells.into_iter().unzip();
    Ok(FieldGrid {
        spec,
        samples,
        flags,
        clip,
        kind,
    })
}

/// Writes `x,y,re,im,abs,flag`, one row per cell, in storage order.
pub fn export_csv(g: &FieldGrid, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_csv(g, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_csv(g: &FieldGrid, w: &mut impl Write) -> Result<()> {
    writeln!(w, "x,y,re,im,abs,flag")?;
    for j in 0..g.spec.ny {
        for i in 0..g.spec.nx {
            let p = g.spec.point(i, j);
            let v = g.get(i, j);
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                p.x,
                p.y,
                v.re,
                v.im,
                v.norm(),
                g.flag(i, j).code()
            )?;
        }
    }
    Ok(())
}

/// One parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvCell {
    pub point: Point2,
    pub value: Complex64,
    pub flag: CellFlag,
}

/// Reads a file written by [`export_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<CsvCell>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate().skip(1) {
        let line = line?;
        let bad = || Error::Parameter(format!("malformed CSV row {}: {line:?}", lineno + 1));
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 6 {
            return Err(bad());
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
        out.push(CsvCell {
            point: Point2::new(num(cols[0])?, num(cols[1])?),
            value: Complex64::new(num(cols[2])?, num(cols[3])?),
            flag: CellFlag::from_code(cols[5]).ok_or_else(bad)?,
        });
    }
    Ok(out)
}

/// 16-bit binary PGM. `abs` maps `[0, clip]` and `re` maps `[−clip, clip]`
/// onto `[0, 65535]`, saturating outside. The top image row is the largest `y`.
pub fn export_pgm(g: &FieldGrid, mode: PgmMode, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_pgm(g, mode, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_pgm(g: &FieldGrid, mode: PgmMode, w: &mut impl Write) -> Result<()> {
    let clip = g
        .clip
        .ok_or_else(|| Error::Parameter("PGM export needs a clip level".into()))?;
    write!(w, "P5\n{} {}\n65535\n", g.spec.nx, g.spec.ny)?;
    for j in (0..g.spec.ny).rev() {
        for i in 0..g.spec.nx {
            let v = g.get(i, j);
            let t = match mode {
                PgmMode::Abs => v.norm() / clip,
                PgmMode::Re => 0.5 * (v.re / clip + 1.0),
            };
            let level = (t.clamp(0.0, 1.0) * 65535.0).round() as u16;
            w.write_all(&level.to_be_bytes())?;
        }
    }
    Ok(())
}
