//! Incident fields expanded in regular waves, `u_i = Σ A_n U_n^+(x)`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cylwave::{cis, Point2, RegularTable};
use crate::error::{Error, Result};

/// Orders kept beyond `k·r` when a plane wave is expanded in regular waves.
pub const PLANE_WAVE_MARGIN: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum IncidentKind {
    /// Unit plane wave `e^{ik ê(ψ)·x}`, `A_n = i^n e^{−inψ}`.
    PlaneWave { psi: f64 },
    /// Explicit coefficients; orders missing from the table are zero.
    Coefficients(BTreeMap<i32, Complex64>),
    /// `U_{n0}^+`, i.e. `A_n = δ_{n,n0}`.
    SingleMode(i32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncidentField {
    pub kind: IncidentKind,
    /// Highest `|n|` used when a plane wave is contracted term by term.
    /// `None` picks `⌈k·r_max⌉ + 30` for the radius at hand.
    pub truncation: Option<usize>,
}

impl IncidentField {
    pub fn plane_wave(psi: f64) -> Self {
        Self {
            kind: IncidentKind::PlaneWave { psi },
            truncation: None,
        }
    }

    pub fn plane_wave_deg(psi_deg: f64) -> Self {
        Self::plane_wave(psi_deg.to_radians())
    }

    pub fn single_mode(n0: i32) -> Self {
        Self {
            kind: IncidentKind::SingleMode(n0),
            truncation: None,
        }
    }

    pub fn coefficients(table: BTreeMap<i32, Complex64>) -> Self {
        Self {
            kind: IncidentKind::Coefficients(table),
            truncation: None,
        }
    }

    pub fn zero() -> Self {
        Self::coefficients(BTreeMap::new())
    }

    pub fn with_truncation(mut self, n: usize) -> Self {
        self.truncation = Some(n);
        self
    }

    /// `A_n`.
    pub fn coefficient(&self, n: i32) -> Complex64 {
        match &self.kind {
            IncidentKind::PlaneWave { psi } => i_pow(n) * cis(-n, *psi),
            IncidentKind::Coefficients(t) => t.get(&n).copied().unwrap_or_default(),
            IncidentKind::SingleMode(n0) => {
                if n == *n0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::default()
                }
            }
        }
    }

    /// Orders carrying non-negligible coefficients for evaluation within radius `r_max`.
    pub fn order_range(&self, k: f64, r_max: f64) -> RangeInclusive<i32> {
        match &self.kind {
            IncidentKind::PlaneWave { .. } => {
                let n = self.truncation.unwrap_or_else(|| plane_wave_truncation(k, r_max)) as i32;
                -n..=n
            }
            IncidentKind::Coefficients(t) => match (t.keys().next(), t.keys().next_back()) {
                (Some(&lo), Some(&hi)) => lo..=hi,
                #[allow(clippy::reversed_empty_ranges)]
                _ => 1..=0,
            },
            IncidentKind::SingleMode(n0) => *n0..=*n0,
        }
    }

    /// Coefficient table over `range`.
    pub fn tabulate(&self, range: RangeInclusive<i32>) -> BTreeMap<i32, Complex64> {
        range.map(|n| (n, self.coefficient(n))).collect()
    }

    /// `αf + βg` as a coefficient table over `range`.
    pub fn combine(
        alpha: Complex64,
        f: &IncidentField,
        beta: Complex64,
        g: &IncidentField,
        range: RangeInclusive<i32>,
    ) -> IncidentField {
        IncidentField::coefficients(
            range
                .map(|n| (n, alpha * f.coefficient(n) + beta * g.coefficient(n)))
                .collect(),
        )
    }

    /// `u_i(p)`; plane waves in closed form, other kinds by their series.
    pub fn evaluate(&self, k: f64, p: Point2) -> Complex64 {
        match &self.kind {
            IncidentKind::PlaneWave { psi } => Complex64::from_polar(1.0, k * Point2::from_polar(1.0, *psi).dot(p)),
            _ => self.evaluate_series(k, p),
        }
    }

    /// `Σ A_n U_n^+(p)` over [`IncidentField::order_range`], for any kind.
    pub fn evaluate_series(&self, k: f64, p: Point2) -> Complex64 {
        let r = p.norm();
        let range = self.order_range(k, r);
        if range.is_empty() {
            return Complex64::default();
        }
        let table = RegularTable::new(max_abs(&range), k * r);
        let theta = p.arg();
        range.map(|n| self.coefficient(n) * table.j(n) * cis(n, theta)).sum()
    }

    /// `∇u_i(p)` as `(∂x, ∂y)`.
    pub fn gradient(&self, k: f64, p: Point2) -> (Complex64, Complex64) {
        if let IncidentKind::PlaneWave { psi } = self.kind {
            let u = self.evaluate(k, p);
            let ik = Complex64::new(0.0, k);
            return (ik * psi.cos() * u, ik * psi.sin() * u);
        }
        let r = p.norm();
        let range = self.order_range(k, r);
        if range.is_empty() {
            return Default::default();
        }
        let table = RegularTable::new(max_abs(&range) + 1, k * r);
        let theta = p.arg();
        let u = |n: i32| table.j(n) * cis(n, theta);
        let mut dx = Complex64::default();
        let mut dy = Complex64::default();
        for n in range {
            let a = self.coefficient(n);
            let (lo, hi) = (u(n - 1), u(n + 1));
            // ∂x U_n = (k/2)(U_{n−1} − U_{n+1}),  ∂y U_n = (ik/2)(U_{n−1} + U_{n+1})
            dx += a * (lo - hi) * (0.5 * k);
            dy += a * (lo + hi) * Complex64::new(0.0, 0.5 * k);
        }
        (dx, dy)
    }

    /// Directional derivative `∇u_i(p)·normal`.
    pub fn normal_derivative(&self, k: f64, p: Point2, normal: Point2) -> Complex64 {
        let (dx, dy) = self.gradient(k, p);
        dx * normal.x + dy * normal.y
    }

    /// Reads a JSON list of `[n, re, im]` triples.
    pub fn from_coefficient_json(text: &str) -> Result<Self> {
        let rows: Vec<(f64, f64, f64)> = serde_json::from_str(text)?;
        let mut table = BTreeMap::new();
        for (n, re, im) in rows {
            if n.fract() != 0.0 || n.abs() > i32::MAX as f64 {
                return Err(Error::Parameter(format!("coefficient order {n} is not an integer")));
            }
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::Parameter(format!("coefficient A_{n} is not finite")));
            }
            table.insert(n as i32, Complex64::new(re, im));
        }
        Ok(Self::coefficients(table))
    }

    pub fn load_coefficients(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_coefficient_json(&std::fs::read_to_string(path)?)
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match &self.kind {
            IncidentKind::PlaneWave { psi } => format!("plane wave psi={:.6} deg", psi.to_degrees()),
            IncidentKind::Coefficients(t) => format!("coefficient table ({} orders)", t.len()),
            IncidentKind::SingleMode(n) => format!("single mode n={n}"),
        }
    }
}

/// `⌈k·r⌉ + 30`.
pub fn plane_wave_truncation(k: f64, r: f64) -> usize {
    (k * r).ceil() as usize + PLANE_WAVE_MARGIN
}

/// `i^n`.
pub(crate) fn i_pow(n: i32) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn max_abs(range: &RangeInclusive<i32>) -> usize {
    range.start().unsigned_abs().max(range.end().unsigned_abs()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn plane_wave_coefficients() {
        let f = IncidentField::plane_wave(0.0);
        assert_eq!(f.coefficient(0), Complex64::new(1.0, 0.0));
        assert!(close(f.coefficient(1), Complex64::new(0.0, 1.0), 1e-16));
        for n in -20..=20 {
            assert!((IncidentField::plane_wave(0.3).coefficient(n).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn single_mode_is_kronecker() {
        let f = IncidentField::single_mode(3);
        assert_eq!(f.coefficient(3), Complex64::new(1.0, 0.0));
        assert_eq!(f.coefficient(2), Complex64::default());
    }

    #[test]
    fn plane_wave_evaluation() {
        let f = IncidentField::plane_wave(1.1);
        assert_eq!(f.evaluate(3.0, Point2::ORIGIN), Complex64::new(1.0, 0.0));
        let g = IncidentField::plane_wave(0.0);
        let d = 0.37;
        assert!(close(
            g.evaluate(2.0, Point2::new(d, 0.0)),
            Complex64::from_polar(1.0, 2.0 * d),
            1e-15
        ));
    }

    #[test]
    fn jacobi_anger_series() {
        let psi = 17f64.to_radians();
        let k = 5.0;
        let pw = IncidentField::plane_wave(psi);
        let table = IncidentField::coefficients(pw.tabulate(-40..=40));
        for t in 0..12 {
            let p = Point2::from_polar(1.0, 0.5 * t as f64);
            assert!(close(table.evaluate(k, p), pw.evaluate(k, p), 1e-10));
        }
    }

    #[test]
    fn plane_wave_normal_derivative() {
        let psi = 0.6;
        let f = IncidentField::plane_wave(psi);
        let k = 2.0;
        let along = Point2::from_polar(1.0, psi);
        let across = Point2::from_polar(1.0, psi + std::f64::consts::FRAC_PI_2);
        assert!(f.normal_derivative(k, Point2::new(0.3, -0.2), across).norm() < 1e-15);
        assert!(close(
            f.normal_derivative(k, Point2::ORIGIN, along),
            Complex64::new(0.0, k),
            1e-15
        ));
    }

    #[test]
    fn series_gradient_matches_finite_difference() {
        let k = 3.0;
        let mut table = BTreeMap::new();
        for n in -6..=6 {
            table.insert(n, Complex64::new(0.3 * n as f64, 1.0 / (1.0 + (n * n) as f64)));
        }
        let f = IncidentField::coefficients(table);
        let h = 1e-5 / k;
        for &(x, y) in &[(0.2, 0.1), (-0.7, 0.4), (0.0, -1.1)] {
            let p = Point2::new(x, y);
            for &phi in &[0.0, 1.0, 2.5] {
                let nrm = Point2::from_polar(1.0, phi);
                let fd = (f.evaluate(k, p + nrm * h) - f.evaluate(k, p - nrm * h)) / (2.0 * h);
                let an = f.normal_derivative(k, p, nrm);
                assert!((fd - an).norm() <= 1e-6 * an.norm().max(1.0), "{fd} vs {an}");
            }
        }
    }

    #[test]
    fn coefficient_file() {
        let f = IncidentField::from_coefficient_json("[[0, 1.0, 0.0], [-2, 0.5, -0.5]]").unwrap();
        assert_eq!(f.coefficient(-2), Complex64::new(0.5, -0.5));
        assert_eq!(f.coefficient(1), Complex64::default());
        assert_eq!(f.order_range(1.0, 1.0), -2..=0);
        assert!(IncidentField::from_coefficient_json("[[0.5, 1, 0]]").is_err());
        assert!(IncidentField::zero().order_range(1.0, 1.0).is_empty());
        assert_eq!(
            IncidentField::zero().evaluate(1.0, Point2::new(1.0, 1.0)),
            Complex64::default()
        );
    }
}
