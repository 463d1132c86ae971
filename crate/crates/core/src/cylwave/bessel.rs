//! Integer-order cylinder functions of real argument.
//!
//! `J_n` comes from Miller's downward recurrence normalized by
//! `J_0 + 2 Σ J_2k = 1`. `Y_0` and `Y_1` use Neumann series in the
//! (accurately known) `J_n` below [`ASYMPTOTIC_SWITCH`] and Hankel's
//! asymptotic expansion above it; higher `Y_n` follow by upward recurrence,
//! which is stable in that direction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `|order|` accepted by the public special-function entry points.
pub const ORDER_MAX: i32 = 200;

/// Largest argument accepted by the public special-function entry points.
pub const ARG_MAX: f64 = 200.0;

const ASYMPTOTIC_SWITCH: f64 = 25.0;
const RESCALE_ABOVE: f64 = 1e250;
const OVERFLOW_ABOVE: f64 = 1e300;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `J_0(x) ..= J_nmax(x)` for `x >= 0`.
pub(crate) fn j_array(nmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x.is_finite() && x >= 0.0);
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }

    let top = nmax.max(x.ceil() as usize);
    let mut start = top + 20 + (40.0 * top as f64).sqrt() as usize;
    start += start % 2;

    let two_over_x = 2.0 / x;
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k, arbitrary seed
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        if k <= nmax {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            cur *= s;
            next *= s;
            norm *= s;
            for v in out.iter_mut().skip(k.saturating_sub(1)) {
                *v *= s;
            }
        }
    }
    out[0] = cur;
    norm += cur;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// `(Y_0(x), Y_1(x))` for `x > 0`.
fn y01(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC_SWITCH {
        return (hankel_asymptotic(0, x).1, hankel_asymptotic(1, x).1);
    }
    let kmax = (x as usize) / 2 + 30;
    let j = j_array(2 * kmax + 1, x);
    let log_term = (x / 2.0).ln() + EULER_GAMMA;

    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for k in 1..=kmax {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        s0 += sign * j[2 * k] / kf;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / kf;
    }
    let y0 = 2.0 / PI * log_term * j[0] - 4.0 / PI * s0;
    let y1 = -2.0 / PI * j[0] / x + 2.0 / PI * log_term * j[1] + 2.0 / PI * s1;
    (y0, y1)
}

/// Hankel's large-argument expansion; returns `(J_nu(x), Y_nu(x))`.
fn hankel_asymptotic(nu: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (nu as f64).powi(2);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60u32 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() > last || term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    let chi = x - (nu as f64 * FRAC_PI_2 + FRAC_PI_4);
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// `Y_0(x) ..= Y_m(x)` with `m <= nmax`; stops early once values leave the
/// representable range, so the returned length may be shorter than `nmax + 1`.
pub(crate) fn y_array(nmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0);
    let (y0, y1) = y01(x);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(y0);
    if nmax == 0 {
        return out;
    }
    out.push(y1);
    let two_over_x = 2.0 / x;
    for n in 1..nmax {
        let next = n as f64 * two_over_x * out[n] - out[n - 1];
        if !next.is_finite() || next.abs() > OVERFLOW_ABOVE {
            break;
        }
        out.push(next);
    }
    out
}

#[inline]
fn parity(n: i32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Tabulated `J_n(x)` for `|n| <= max_order`, with derivatives.
#[derive(Debug, Clone)]
pub(crate) struct RegularTable {
    j: Vec<f64>,
}

impl RegularTable {
    pub(crate) fn new(max_order: usize, x: f64) -> Self {
        Self {
            j: j_array(max_order + 1, x),
        }
    }

    pub(crate) fn max_order(&self) -> usize {
        self.j.len() - 2
    }

    #[inline]
    pub(crate) fn j(&self, n: i32) -> f64 {
        let v = self.j[n.unsigned_abs() as usize];
        if n < 0 {
            parity(n) * v
        } else {
            v
        }
    }

    #[inline]
    pub(crate) fn jp(&self, n: i32) -> f64 {
        0.5 * (self.j(n - 1) - self.j(n + 1))
    }
}

/// Tabulated `H_n^(1)(x)` for `|n| <= max_order`, with derivatives.
#[derive(Debug, Clone)]
pub(crate) struct OutgoingTable {
    j: Vec<f64>,
    y: Vec<f64>,
}

impl OutgoingTable {
    /// Fails with [`Error::Overflow`] when `Y_{max_order+1}(x)` is not representable.
    pub(crate) fn new(max_order: usize, x: f64) -> Result<Self> {
        let table = Self::up_to_overflow(max_order, x);
        if table.y.len() < max_order + 2 {
            return Err(Error::Overflow {
                what: format!("H_{}^(1)({x})", table.y.len()),
            });
        }
        Ok(table)
    }

    /// Like [`OutgoingTable::new`] but keeps whatever orders are representable.
    pub(crate) fn up_to_overflow(max_order: usize, x: f64) -> Self {
        let y = y_array(max_order + 1, x);
        let j = j_array(y.len() - 1, x);
        Self { j, y }
    }

    /// Highest order `n` such that `h(n)` and `hp(n)` are both available.
    pub(crate) fn max_order(&self) -> usize {
        self.y.len().saturating_sub(2)
    }

    #[inline]
    pub(crate) fn h(&self, n: i32) -> Complex64 {
        let i = n.unsigned_abs() as usize;
        let v = Complex64::new(self.j[i], self.y[i]);
        if n < 0 {
            v * parity(n)
        } else {
            v
        }
    }

    #[inline]
    pub(crate) fn hp(&self, n: i32) -> Complex64 {
        (self.h(n - 1) - self.h(n + 1)) * 0.5
    }
}

fn check_order(order: i32) -> Result<()> {
    if order.abs() > ORDER_MAX {
        return Err(Error::OrderOutOfRange {
            order: order as i64,
            max: ORDER_MAX as i64,
        });
    }
    Ok(())
}

fn check_regular_arg(x: f64) -> Result<()> {
    if !x.is_finite() || !(0.0..=ARG_MAX).contains(&x) {
        return Err(Error::ArgumentOutOfRange { arg: x, max: ARG_MAX });
    }
    Ok(())
}

fn check_outgoing_arg(x: f64) -> Result<()> {
    if x <= 0.0 {
        return Err(Error::Singularity(format!(
            "Hankel function needs a positive argument, got {x}"
        )));
    }
    check_regular_arg(x)
}

/// Bessel function of the first kind `J_order(x)`.
pub fn bessel_j(order: i32, x: f64) -> Result<f64> {
    check_order(order)?;
    check_regular_arg(x)?;
    Ok(RegularTable::new(order.unsigned_abs() as usize, x).j(order))
}

/// Derivative `J_order'(x)`.
pub fn bessel_j_prime(order: i32, x: f64) -> Result<f64> {
    check_order(order)?;
    check_regular_arg(x)?;
    Ok(RegularTable::new(order.unsigned_abs() as usize + 1, x).jp(order))
}

/// Hankel function of the first kind `H_order^(1)(x) = J + iY`.
pub fn hankel1(order: i32, x: f64) -> Result<Complex64> {
    check_order(order)?;
    check_outgoing_arg(x)?;
    let n = order.unsigned_abs() as usize;
    let table = OutgoingTable::up_to_overflow(n, x);
    if table.y.len() <= n {
        return Err(Error::Overflow {
            what: format!("H_{order}^(1)({x})"),
        });
    }
    Ok(table.h(order))
}

/// Derivative `H_order^(1)'(x)`.
pub fn hankel1_prime(order: i32, x: f64) -> Result<Complex64> {
    check_order(order)?;
    check_outgoing_arg(x)?;
    let n = order.unsigned_abs() as usize;
    let table = OutgoingTable::up_to_overflow(n + 1, x);
    if table.max_order() < n {
        return Err(Error::Overflow {
            what: format!("H_{order}^(1)'({x})"),
        });
    }
    Ok(table.hp(order))
}
