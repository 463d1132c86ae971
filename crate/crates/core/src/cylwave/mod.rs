//! Cylinder functions and the entire/outgoing wave functions
//! `U_n^±(x) = J_n(k|x|) e^{±in arg x}` and `V_n^±(x) = H_n^(1)(k|x|) e^{±in arg x}`.

mod bessel;

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bessel::{bessel_j, bessel_j_prime, hankel1, hankel1_prime, ARG_MAX, ORDER_MAX};
pub(crate) use bessel::{OutgoingTable, RegularTable};

/// A position in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: r * c, y: r * s }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Polar angle in `[0, 2π)`; the origin maps to 0.
    pub fn arg(self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            return 0.0;
        }
        normalize_angle(self.y.atan2(self.x))
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Map an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Sign of the angular exponent in `U_n^±` and `V_n^±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `e^{i n θ}`.
#[inline]
pub(crate) fn cis(n: i32, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, n as f64 * theta)
}

pub(crate) fn check_wavenumber(k: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Parameter(format!(
            "wavenumber must be positive and finite, got {k}"
        )));
    }
    Ok(())
}

/// Regular wave function `U_n^±(p)`.
pub fn wave_u(order: i32, sign: Sign, k: f64, p: Point2) -> Result<Complex64> {
    check_wavenumber(k)?;
    let j = bessel_j(order, k * p.norm())?;
    Ok(cis(order, sign.factor() * p.arg()) * j)
}

/// Outgoing wave function `V_n^±(p)`, singular at the origin.
pub fn wave_v(order: i32, sign: Sign, k: f64, p: Point2) -> Result<Complex64> {
    check_wavenumber(k)?;
    let r = p.norm();
    if r == 0.0 {
        return Err(Error::Singularity(
            "outgoing wave function evaluated at its centre".into(),
        ));
    }
    let h = hankel1(order, k * r)?;
    Ok(h * cis(order, sign.factor() * p.arg()))
}

/// Free-space Green's function `g(x, x') = −(i/4) V_0(x − x')`.
pub fn green(k: f64, x: Point2, xp: Point2) -> Result<Complex64> {
    if x == xp {
        return Err(Error::Singularity("Green's function at coincident points".into()));
    }
    Ok(Complex64::new(0.0, -0.25) * wave_v(0, Sign::Plus, k, x - xp)?)
}

const GRAF_REL_TOL: f64 = 1e-14;
const GRAF_MAX_SHELLS: usize = 200;

/// `V_l^+(x − y)` re-expanded about the origin by Graf's addition theorem.
///
/// For `|x| > |y|` the series is `Σ_n V_n^+(x) U_{n−l}^−(y)`; for `|x| < |y|`
/// it is `Σ_n U_n^+(x) V_{n−l}^−(y)`. Terms are accumulated in symmetric
/// shells about the dominant index until three consecutive shells each fall
/// below `1e-14` of the running sum.
pub fn graf_translate(l: i32, k: f64, x: Point2, y: Point2) -> Result<Complex64> {
    check_wavenumber(k)?;
    let (rx, ry) = (x.norm(), y.norm());
    let scale = rx.max(ry);
    if (rx - ry).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::BranchAmbiguity { x_norm: rx, y_norm: ry });
    }
    if l.abs() > ORDER_MAX {
        return Err(Error::OrderOutOfRange {
            order: l as i64,
            max: ORDER_MAX as i64,
        });
    }
    let (tx, ty) = (x.arg(), y.arg());
    let span = l.unsigned_abs() as usize + GRAF_MAX_SHELLS + 1;

    // (regular point, outgoing point) and the index map for each branch
    let (reg_r, out_r) = if rx > ry { (ry, rx) } else { (rx, ry) };
    let regular = RegularTable::new(GRAF_MAX_SHELLS + 1, k * reg_r);
    let outgoing = OutgoingTable::up_to_overflow(span, k * out_r);

    let term = |t: i32| -> Option<Complex64> {
        if rx > ry {
            // n = l + t: V_n^+(x) U_t^-(y)
            let n = l + t;
            if n.unsigned_abs() as usize > outgoing.max_order() {
                return None;
            }
            Some(outgoing.h(n) * cis(n, tx) * regular.j(t) * cis(-t, ty))
        } else {
            // n = t: U_n^+(x) V_{n-l}^-(y)
            let m = t - l;
            if m.unsigned_abs() as usize > outgoing.max_order() {
                return None;
            }
            Some(regular.j(t) * cis(t, tx) * outgoing.h(m) * cis(-m, ty))
        }
    };

    let mut sum = term(0).ok_or_else(|| Error::Overflow {
        what: "Graf series leading term".into(),
    })?;
    let mut quiet = 0;
    for t in 1..=GRAF_MAX_SHELLS as i32 {
        let (a, b) = match (term(t), term(-t)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Truncation {
                    terms: 2 * t as usize - 1,
                    tail: f64::INFINITY,
                })
            }
        };
        let shell = a + b;
        sum += shell;
        if shell.norm() <= GRAF_REL_TOL * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Truncation {
        terms: 2 * GRAF_MAX_SHELLS + 1,
        tail: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn arg_is_normalized() {
        assert_eq!(Point2::ORIGIN.arg(), 0.0);
        assert_relative_eq!(Point2::new(-1.0, 0.0).arg(), PI);
        assert_relative_eq!(Point2::new(0.0, -1.0).arg(), 1.5 * PI);
        assert!(Point2::new(1.0, -1e-300).arg() < TAU);
        assert_eq!(normalize_angle(-1e-18), 0.0);
    }

    #[test]
    fn regular_wave_at_origin_is_kronecker() {
        assert_eq!(
            wave_u(0, Sign::Plus, 2.0, Point2::ORIGIN).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(wave_u(3, Sign::Minus, 2.0, Point2::ORIGIN).unwrap().norm(), 0.0);
    }

    #[test]
    fn minus_sign_conjugates() {
        let p = Point2::new(0.4, -1.3);
        let a = wave_u(2, Sign::Plus, 1.7, p).unwrap();
        let b = wave_u(2, Sign::Minus, 1.7, p).unwrap();
        assert_relative_eq!(a.re, b.re);
        assert_relative_eq!(a.im, -b.im);
    }

    #[test]
    fn odd_order_flips_under_reflection() {
        let p = Point2::new(0.8, 0.3);
        let a = wave_u(3, Sign::Plus, 1.0, p).unwrap();
        let b = wave_u(3, Sign::Plus, 1.0, -p).unwrap();
        assert!((b / a + 1.0).norm() < 1e-13);
    }

    #[test]
    fn outgoing_identities() {
        let p = Point2::new(-0.7, 1.1);
        let k = 2.5;
        let vm1 = wave_v(-1, Sign::Plus, k, p).unwrap();
        let v1 = wave_v(1, Sign::Minus, k, p).unwrap();
        assert!((vm1 + v1).norm() < 1e-14);
        assert!(matches!(
            wave_v(0, Sign::Plus, k, Point2::ORIGIN),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn outgoing_far_field_magnitude() {
        let k = 4.0;
        let p = Point2::from_polar(25.0, 0.3);
        let v = wave_v(0, Sign::Plus, k, p).unwrap();
        let expect = (2.0 / (100.0 * PI)).sqrt();
        assert!((v.norm() - expect).abs() < 0.01 * expect);
    }

    #[test]
    fn green_symmetry_and_scale() {
        let (x, y) = (Point2::new(0.1, 0.2), Point2::new(-1.0, 0.5));
        let g1 = green(3.0, x, y).unwrap();
        let g2 = green(3.0, y, x).unwrap();
        assert!((g1 - g2).norm() < 1e-15);
        let v = wave_v(0, Sign::Plus, 3.0, x - y).unwrap();
        assert_eq!(g1, Complex64::new(0.0, -0.25) * v);
        assert!(green(3.0, x, x).is_err());
    }

    #[test]
    fn graf_collapses_at_origin() {
        let x = Point2::new(1.2, -0.4);
        let got = graf_translate(0, 1.5, x, Point2::ORIGIN).unwrap();
        let want = wave_v(0, Sign::Plus, 1.5, x).unwrap();
        assert!((got - want).norm() < 1e-14 * want.norm());
    }

    #[test]
    fn graf_both_branches() {
        let k = 1.3;
        let y = Point2::from_polar(0.5, 2.0);
        let x_out = Point2::from_polar(1.5, 0.7);
        let direct = wave_v(0, Sign::Plus, k, x_out - y).unwrap();
        let series = graf_translate(0, k, x_out, y).unwrap();
        assert!((direct - series).norm() < 1e-10 * direct.norm());

        let x_in = Point2::from_polar(0.4, 4.1);
        let y_far = Point2::from_polar(1.3, 5.0);
        let direct = wave_v(2, Sign::Plus, k, x_in - y_far).unwrap();
        let series = graf_translate(2, k, x_in, y_far).unwrap();
        assert!((direct - series).norm() < 1e-10 * direct.norm());
    }

    #[test]
    fn graf_rejects_equal_radii() {
        let x = Point2::from_polar(1.0, 0.1);
        let y = Point2::from_polar(1.0, 2.1);
        assert!(matches!(
            graf_translate(0, 1.0, x, y),
            Err(Error::BranchAmbiguity { .. })
        ));
    }
}
