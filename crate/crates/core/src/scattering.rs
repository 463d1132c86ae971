//! A circular cylinder at the origin illuminated by `u_i + u_d`.
//!
//! The cylinder scatters whatever regular field reaches it: with the cloak
//! off that is `u_i` (coefficients `A_n`), with it on `u_i + u_d`
//! (coefficients `A_n + E_n`). Multiple scattering between the cylinder and
//! the sources is not modelled.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitudes::{source_field, AmplitudeSet};
use crate::cylwave::{bessel_j, bessel_j_prime, cis, hankel1, hankel1_prime, OutgoingTable, Point2};
use crate::diagnostics::nearfield_coefficients;
use crate::error::{Error, Result};
use crate::incident::IncidentField;

/// Orders beyond `⌈k a₀⌉` kept in the modal sums.
pub const MODE_MARGIN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// `u = 0` on the surface.
    Soft,
    /// `∂u/∂r = 0` on the surface.
    Hard,
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "soft" => Ok(Boundary::Soft),
            "hard" => Ok(Boundary::Hard),
            other => Err(Error::Parameter(format!(
                "boundary must be soft or hard, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cylinder {
    pub radius: f64,
    pub boundary: Boundary,
}

impl Cylinder {
    pub fn new(radius: f64, boundary: Boundary) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Parameter(format!(
                "cylinder radius must be positive, got {radius}"
            )));
        }
        Ok(Self { radius, boundary })
    }

    /// Highest order kept in the modal sums at wavenumber `k`.
    pub fn mode_limit(&self, k: f64) -> usize {
        (k * self.radius).ceil() as usize + MODE_MARGIN
    }
}

/// `R_n = −J_n(k a₀)/H_n(k a₀)` (soft) or `−J_n'(k a₀)/H_n'(k a₀)` (hard).
pub fn response_coefficient(cyl: &Cylinder, k: f64, n: i32) -> Result<Complex64> {
    let x = k * cyl.radius;
    match cyl.boundary {
        Boundary::Soft => Ok(-bessel_j(n, x)? / hankel1(n, x)?),
        Boundary::Hard => Ok(-bessel_j_prime(n, x)? / hankel1_prime(n, x)?),
    }
}

/// Scattering by one cylinder, with modal coefficients prepared once.
#[derive(Debug, Clone)]
pub struct ScatteringProblem {
    k: f64,
    cylinder: Cylinder,
    incident: IncidentField,
    amplitudes: Option<AmplitudeSet>,
    /// `C_n R_n`
    scattered: BTreeMap<i32, Complex64>,
}

impl ScatteringProblem {
    /// Cloak off: the cylinder sees only `u_i`.
    pub fn bare(k: f64, cylinder: Cylinder, incident: IncidentField) -> Result<Self> {
        Self::build(k, cylinder, incident, None)
    }

    /// Cloak on: the cylinder sees `u_i + u_d`.
    pub fn cloaked(cylinder: Cylinder, amps: AmplitudeSet) -> Result<Self> {
        let inner = amps.config().inner_radius();
        if cylinder.radius >= inner {
            return Err(Error::Domain(format!(
                "cylinder radius {} must be below the cloak's inner radius {inner}",
                cylinder.radius
            )));
        }
        Self::build(amps.config().k, cylinder, amps.incident().clone(), Some(amps))
    }

    fn build(k: f64, cylinder: Cylinder, incident: IncidentField, amps: Option<AmplitudeSet>) -> Result<Self> {
        let top = cylinder.mode_limit(k) as i32;
        let near = match &amps {
            Some(a) => Some(nearfield_coefficients(a, -top..=top)?),
            None => None,
        };
        let mut scattered = BTreeMap::new();
        for n in -top..=top {
            let mut c = incident.coefficient(n);
            if let Some(e) = &near {
                c += e[&n];
            }
            scattered.insert(n, c * response_coefficient(&cylinder, k, n)?);
        }
        Ok(Self {
            k,
            cylinder,
            incident,
            amplitudes: amps,
            scattered,
        })
    }

    pub fn cylinder(&self) -> &Cylinder {
        &self.cylinder
    }

    pub fn is_cloaked(&self) -> bool {
        self.amplitudes.is_some()
    }

    /// Coefficients of the scattered field in outgoing waves about the origin; these are its `F_n`.
    pub fn scattered_coefficients(&self) -> &BTreeMap<i32, Complex64> {
        &self.scattered
    }

    /// `Σ_n C_n R_n V_n^+(p)` for `|p| > a₀`.
    pub fn scattered_field(&self, p: Point2) -> Result<Complex64> {
        let r = p.norm();
        if r <= self.cylinder.radius {
            return Err(Error::Domain(format!(
                "point at radius {r} lies inside the cylinder of radius {}",
                self.cylinder.radius
            )));
        }
        let top = self.cylinder.mode_limit(self.k);
        let table = OutgoingTable::new(top, self.k * r)?;
        let theta = p.arg();
        Ok(self
            .scattered
            .iter()
            .map(|(&n, &c)| c * table.h(n) * cis(n, theta))
            .sum())
    }

    /// `∂u_s/∂r` at `p`.
    pub fn scattered_radial_derivative(&self, p: Point2) -> Result<Complex64> {
        let r = p.norm();
        if r <= self.cylinder.radius * (1.0 - 1e-12) {
            return Err(Error::Domain(format!("point at radius {r} lies inside the cylinder")));
        }
        let top = self.cylinder.mode_limit(self.k);
        let table = OutgoingTable::new(top, self.k * r)?;
        let theta = p.arg();
        Ok(self
            .scattered
            .iter()
            .map(|(&n, &c)| c * table.hp(n) * cis(n, theta))
            .sum::<Complex64>()
            * self.k)
    }

    /// `u_i + u_d + u_s` at `p`.
    pub fn total_field(&self, p: Point2) -> Result<Complex64> {
        let mut u = self.incident.evaluate(self.k, p) + self.scattered_field(p)?;
        if let Some(a) = &self.amplitudes {
            u += source_field(a, p)?;
        }
        Ok(u)
    }
}

/// `u_i + u_d`, with the source field dropped when `amps` is `None`.
pub fn free_field(k: f64, incident: &IncidentField, amps: Option<&AmplitudeSet>, p: Point2) -> Result<Complex64> {
    let mut u = incident.evaluate(k, p);
    if let Some(a) = amps {
        u += source_field(a, p)?;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> IncidentField {
        IncidentField::plane_wave_deg(17.0)
    }

    #[test]
    fn passive_response() {
        for bc in [Boundary::Soft, Boundary::Hard] {
            let cyl = Cylinder::new(1.0, bc).unwrap();
            for k in [1.0, 5.0, 10.0] {
                for n in -40..=40 {
                    // |1 + 2R_n| = 1 for a lossless cylinder, which bounds |R_n| by 1
                    let r = response_coefficient(&cyl, k, n).unwrap();
                    assert!(r.norm() <= 1.0 + 1e-12);
                    assert!(((1.0 + 2.0 * r).norm() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn soft_boundary_condition() {
        let cyl = Cylinder::new(1.0, Boundary::Soft).unwrap();
        let prob = ScatteringProblem::bare(5.0, cyl, plane()).unwrap();
        for i in 0..32 {
            let p = Point2::from_polar(1.0 + 1e-14, i as f64 * 0.2);
            assert!(prob.total_field(p).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn hard_boundary_condition() {
        let k = 5.0;
        let cyl = Cylinder::new(1.0, Boundary::Hard).unwrap();
        let prob = ScatteringProblem::bare(k, cyl, plane()).unwrap();
        for (&n, &c) in prob.scattered_coefficients() {
            let modal = plane().coefficient(n) * bessel_j_prime(n, k).unwrap() + c * hankel1_prime(n, k).unwrap();
            assert!(modal.norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_interior_points() {
        let cyl = Cylinder::new(1.0, Boundary::Hard).unwrap();
        let prob = ScatteringProblem::bare(2.0, cyl, plane()).unwrap();
        assert!(matches!(
            prob.scattered_field(Point2::new(0.5, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zero_incident_scatters_nothing() {
        let cyl = Cylinder::new(1.0, Boundary::Soft).unwrap();
        let prob = ScatteringProblem::bare(2.0, cyl, IncidentField::zero()).unwrap();
        assert_eq!(
            prob.scattered_field(Point2::new(3.0, 1.0)).unwrap(),
            Complex64::default()
        );
    }

    #[test]
    fn cloak_must_enclose_cylinder() {
        let c = crate::geometry::symmetric_config(4, 1.0, 1.0).unwrap();
        let amps = AmplitudeSet::zeros(c, plane(), 3);
        let cyl = Cylinder::new(0.5, Boundary::Hard).unwrap();
        assert!(matches!(ScatteringProblem::cloaked(cyl, amps), Err(Error::Domain(_))));
    }

    #[test]
    fn parses_boundary() {
        assert_eq!("soft".parse::<Boundary>().unwrap(), Boundary::Soft);
        assert!("rigid".parse::<Boundary>().is_err());
    }
}
