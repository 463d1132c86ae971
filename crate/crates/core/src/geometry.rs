//! Source layouts and the regions they define.
//!
//! Each active source sits at `x_m` with a disc of radius `a_m`; the part of
//! its circle facing the cloaked region is the arc from `arc_start`
//! counterclockwise through `arc_extent`. The cloaked region `C` is bounded by
//! the union of these arcs, and `R` is `C` together with all source discs.

use std::f64::consts::{PI, TAU};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cylwave::{normalize_angle, Point2};
use crate::error::{Error, Result};

/// Junction points closer than this (relative to the layout size) are merged.
const JUNCTION_TOL: f64 = 1e-9;

/// One active multipole source and the arc of its circle bounding `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SiteRecord", into = "SiteRecord")]
pub struct SourceSite {
    pub position: Point2,
    pub radius: f64,
    /// Arc start angle in `[0, 2π)`, measured about `position`.
    pub arc_start: f64,
    /// Counterclockwise arc length in radians, in `(0, 2π)`.
    pub arc_extent: f64,
}

#[derive(Serialize, Deserialize)]
struct SiteRecord {
    x: f64,
    y: f64,
    a: f64,
    phi1: f64,
    phi2: f64,
}

impl TryFrom<SiteRecord> for SourceSite {
    type Error = Error;

    fn try_from(r: SiteRecord) -> Result<Self> {
        SourceSite::new(Point2::new(r.x, r.y), r.a, r.phi1, r.phi2)
    }
}

impl From<SourceSite> for SiteRecord {
    fn from(s: SourceSite) -> Self {
        SiteRecord {
            x: s.position.x,
            y: s.position.y,
            a: s.radius,
            phi1: s.arc_start,
            phi2: s.arc_end(),
        }
    }
}

impl SourceSite {
    /// Site whose arc runs counterclockwise from `phi1` to `phi2`.
    pub fn new(position: Point2, radius: f64, phi1: f64, phi2: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Configuration(format!(
                "source radius must be positive, got {radius}"
            )));
        }
        if !(position.x.is_finite() && position.y.is_finite() && phi1.is_finite() && phi2.is_finite()) {
            return Err(Error::Configuration("non-finite site parameters".into()));
        }
        let start = normalize_angle(phi1);
        let extent = normalize_angle(phi2 - phi1);
        if extent == 0.0 {
            return Err(Error::Configuration(format!("arc [{phi1}, {phi2}] has zero extent")));
        }
        Ok(Self {
            position,
            radius,
            arc_start: start,
            arc_extent: extent,
        })
    }

    /// Arc end angle in `[0, 2π)`.
    pub fn arc_end(&self) -> f64 {
        normalize_angle(self.arc_start + self.arc_extent)
    }

    /// Arc end angle as `arc_start + arc_extent`, without wrapping.
    pub fn arc_end_unwrapped(&self) -> f64 {
        self.arc_start + self.arc_extent
    }

    pub fn point_on_circle(&self, phi: f64) -> Point2 {
        self.position + Point2::from_polar(self.radius, phi)
    }

    pub fn arc_endpoints(&self) -> (Point2, Point2) {
        (
            self.point_on_circle(self.arc_start),
            self.point_on_circle(self.arc_end_unwrapped()),
        )
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.distance(self.position) <= self.radius
    }
}

/// Where a point lies relative to the cloak.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    /// Inside the cloaked region `C`.
    InC,
    /// Inside (or on) the disc of the source with this zero-based index.
    InSourceDisc(usize),
    /// Outside `R`, where the source field vanishes.
    OutsideR,
}

/// The layout of active sources together with the wavenumber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigRecord")]
pub struct SourceConfig {
    pub k: f64,
    pub sources: Vec<SourceSite>,
}

#[derive(Deserialize)]
struct ConfigRecord {
    k: f64,
    sources: Vec<SourceSite>,
}

impl TryFrom<ConfigRecord> for SourceConfig {
    type Error = Error;

    fn try_from(r: ConfigRecord) -> Result<Self> {
        SourceConfig::new(r.k, r.sources)
    }
}

impl SourceConfig {
    pub fn new(k: f64, sources: Vec<SourceSite>) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::Configuration(format!("wavenumber must be positive, got {k}")));
        }
        if sources.len() < 3 {
            return Err(Error::Configuration(format!(
                "at least 3 sources are needed to enclose a region, got {}",
                sources.len()
            )));
        }
        for (m, s) in sources.iter().enumerate() {
            if s.position.norm() <= s.radius {
                return Err(Error::Configuration(format!(
                    "disc of source {m} contains the origin (|x_m| = {}, a_m = {})",
                    s.position.norm(),
                    s.radius
                )));
            }
        }
        Ok(Self { k, sources })
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    /// Same layout at a different wavenumber.
    pub fn with_wavenumber(&self, k: f64) -> Result<Self> {
        Self::new(k, self.sources.clone())
    }

    pub fn positions(&self) -> impl Iterator<Item = Point2> + '_ {
        self.sources.iter().map(|s| s.position)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string()?)?;
        Ok(())
    }

    /// Vertices of the polygon joining consecutive arc junctions, ordered by
    /// angle about the origin. Fails when some arc end does not meet another
    /// site's arc end, since `C` is then not bounded by the arcs alone.
    pub fn corner_polygon(&self) -> Result<Vec<Point2>> {
        let scale = self.outer_radius();
        let tol = JUNCTION_TOL * scale;
        let ends: Vec<(usize, Point2)> = self
            .sources
            .iter()
            .enumerate()
            .flat_map(|(m, s)| {
                let (a, b) = s.arc_endpoints();
                [(m, a), (m, b)]
            })
            .collect();

        for &(m, p) in &ends {
            let met = ends.iter().any(|&(other, q)| other != m && p.distance(q) <= tol);
            if !met {
                return Err(Error::Configuration(format!(
                    "arc of source {m} ends at ({:.6}, {:.6}) without meeting a neighbouring arc; \
                     only layouts whose arcs close up are supported",
                    p.x, p.y
                )));
            }
        }

        let mut corners: Vec<Point2> = Vec::with_capacity(self.len());
        for &(_, p) in &ends {
            if !corners.iter().any(|q| q.distance(p) <= tol) {
                corners.push(p);
            }
        }
        corners.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        Ok(corners)
    }

    /// Classify `p` as inside a source disc, inside `C`, or outside `R`.
    ///
    /// Disc membership wins (lowest index first). Otherwise `p` is in `C`
    /// when it lies inside the corner polygon.
    pub fn classify(&self, p: Point2) -> Result<RegionLabel> {
        if let Some(m) = self.sources.iter().position(|s| s.contains(p)) {
            return Ok(RegionLabel::InSourceDisc(m));
        }
        if p.norm() > self.outer_radius() {
            return Ok(RegionLabel::OutsideR);
        }
        let polygon = self.corner_polygon()?;
        Ok(if point_in_polygon(p, &polygon) {
            RegionLabel::InC
        } else {
            RegionLabel::OutsideR
        })
    }

    /// `min_m (|x_m| − a_m)`: the regular expansion about the origin holds inside this radius.
    pub fn inner_radius(&self) -> f64 {
        self.sources
            .iter()
            .map(|s| s.position.norm() - s.radius)
            .fold(f64::INFINITY, f64::min)
    }

    /// `max_m (|x_m| + a_m)`: the outgoing expansion about the origin holds outside this radius.
    pub fn outer_radius(&self) -> f64 {
        self.sources
            .iter()
            .map(|s| s.position.norm() + s.radius)
            .fold(0.0, f64::max)
    }
}

/// Even-odd ray casting.
fn point_in_polygon(p: Point2, poly: &[Point2]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + n - 1) % n]);
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// `M` equal sources on a circle of radius `b`, at `θ_m = 2π(m−1)/M`, with
/// `a = b sin(π/M)` so that neighbouring discs touch.
pub fn symmetric_config(m: usize, b: f64, k: f64) -> Result<SourceConfig> {
    if m < 3 {
        return Err(Error::Configuration(format!(
            "the symmetric layout needs at least 3 sources, got {m}"
        )));
    }
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::Configuration(format!("layout radius must be positive, got {b}")));
    }
    let half = PI / m as f64;
    let a = b * half.sin();
    // arcsin((b/a) sin(π/M)) = π/2 exactly for this radius choice
    let half_arc = PI / 2.0 - half;
    let sites = (0..m)
        .map(|i| {
            let theta = i as f64 * TAU / m as f64;
            SourceSite::new(
                Point2::from_polar(b, theta),
                a,
                PI + theta - half_arc,
                PI + theta + half_arc,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SourceConfig::new(k, sites)
}
