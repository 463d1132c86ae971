//! Checks of the cloaking conditions on a computed [`AmplitudeSet`].
//!
//! Outside the source layout `u_d = Σ_n F_n V_n^+(x)`; near the origin
//! `u_d = Σ_n E_n U_n^+(x)`. A non-radiating cloak has `F_n = 0` and
//! `E_n = −A_n` for every `n`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::amplitudes::{AmplitudeSet, KernelTable};
use crate::cylwave::{cis, OutgoingTable, RegularTable};
use crate::error::{Error, Result};
use crate::geometry::SourceConfig;

/// Orders reported when no range is given.
pub const DEFAULT_RANGE: RangeInclusive<i32> = -10..=10;

fn span(range: &RangeInclusive<i32>, n_max: usize) -> usize {
    let reach = range.start().unsigned_abs().max(range.end().unsigned_abs()) as usize;
    reach + n_max + 1
}

/// `F_n = Σ_m Σ_l b_{m,l} U_{n−l}^−(x_m)`.
pub fn farfield_coefficients(amps: &AmplitudeSet, range: RangeInclusive<i32>) -> BTreeMap<i32, Complex64> {
    let k = amps.config().k;
    let n_max = amps.order() as i32;
    let top = span(&range, amps.order());
    let sites: Vec<(RegularTable, f64)> = amps
        .config()
        .sources
        .iter()
        .map(|s| (RegularTable::new(top, k * s.position.norm()), s.position.arg()))
        .collect();
    range
        .map(|n| {
            let mut sum = Complex64::default();
            for (m, (table, theta)) in sites.iter().enumerate() {
                for l in -n_max..=n_max {
                    let q = n - l;
                    sum += amps.get(m, l) * table.j(q) * cis(-q, *theta);
                }
            }
            (n, sum)
        })
        .collect()
}

/// `E_n = Σ_m Σ_l b_{m,l} V_{n−l}^−(x_m)`.
pub fn nearfield_coefficients(amps: &AmplitudeSet, range: RangeInclusive<i32>) -> Result<BTreeMap<i32, Complex64>> {
    let k = amps.config().k;
    let n_max = amps.order() as i32;
    let top = span(&range, amps.order());
    let sites = amps
        .config()
        .sources
        .iter()
        .map(|s| Ok((OutgoingTable::new(top, k * s.position.norm())?, s.position.arg())))
        .collect::<Result<Vec<_>>>()?;
    let mut out = BTreeMap::new();
    for n in range {
        let mut sum = Complex64::default();
        for (m, (table, theta)) in sites.iter().enumerate() {
            for l in -n_max..=n_max {
                let q = n - l;
                sum += amps.get(m, l) * table.h(q) * cis(-q, *theta);
            }
        }
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::Overflow {
                what: format!("near-field coefficient E_{n}"),
            });
        }
        out.insert(n, sum);
    }
    Ok(out)
}

/// `f(θ) = Σ_n f_n e^{inθ}` with `f_n = √(2/π) i^{−(n+1/2)} F_n`.
pub fn farfield_amplitude(f: &BTreeMap<i32, Complex64>, theta: f64) -> Complex64 {
    let scale = (2.0 / PI).sqrt();
    f.iter()
        .map(|(&n, &c)| {
            let phase = Complex64::from_polar(scale, -FRAC_PI_2 * (n as f64 + 0.5));
            phase * c * cis(n, theta)
        })
        .sum()
}

/// `σ_r = 4 Σ_n |F_n|²`.
pub fn farfield_flux(f: &BTreeMap<i32, Complex64>) -> f64 {
    4.0 * f.values().map(|c| c.norm_sqr()).sum::<f64>()
}

/// Per-order diagnostics of one amplitude set.
#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsReport {
    pub farfield: BTreeMap<i32, Complex64>,
    pub nearfield: BTreeMap<i32, Complex64>,
    /// `|A_n + E_n|`
    pub residual: BTreeMap<i32, f64>,
    /// `|(A_n + E_n) J_n(k r)|` with `r` half the inner radius.
    pub weighted_residual: BTreeMap<i32, f64>,
    pub probe_radius: f64,
    pub sigma_r: f64,
    pub n_range: (i32, i32),
    pub order: usize,
}

impl DiagnosticsReport {
    pub fn compute(amps: &AmplitudeSet, range: RangeInclusive<i32>) -> Result<Self> {
        let farfield = farfield_coefficients(amps, range.clone());
        let nearfield = nearfield_coefficients(amps, range.clone())?;
        let k = amps.config().k;
        let probe_radius = amps.config().inner_radius() / 2.0;
        let reach = range.start().unsigned_abs().max(range.end().unsigned_abs()) as usize;
        let probe = RegularTable::new(reach, k * probe_radius);
        let mut residual = BTreeMap::new();
        let mut weighted_residual = BTreeMap::new();
        for (&n, &e) in &nearfield {
            let r = (amps.incident().coefficient(n) + e).norm();
            residual.insert(n, r);
            weighted_residual.insert(n, r * probe.j(n).abs());
        }
        Ok(Self {
            sigma_r: farfield_flux(&farfield),
            farfield,
            nearfield,
            residual,
            weighted_residual,
            probe_radius,
            n_range: (*range.start(), *range.end()),
            order: amps.order(),
        })
    }

    pub fn max_farfield(&self) -> f64 {
        self.farfield.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.residual.values().copied().fold(0.0, f64::max)
    }

    pub fn max_weighted_residual(&self) -> f64 {
        self.weighted_residual.values().copied().fold(0.0, f64::max)
    }

    /// CSV with columns `n,abs_F,abs_A_plus_E,weighted_residual` and a final `sigma_r` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,abs_F,abs_A_plus_E,weighted_residual\n");
        for (n, f) in &self.farfield {
            out.push_str(&format!(
                "{n},{:.16e},{:.16e},{:.16e}\n",
                f.norm(),
                self.residual[n],
                self.weighted_residual[n]
            ));
        }
        out.push_str(&format!("sigma_r,{:.16e},,\n", self.sigma_r));
        out
    }
}

/// `S_pq = Σ_m Σ_{|l|≤N} b_{m,lq} U_{p−l}^−(x_m)`.
pub fn scattering_matrix_entry(table: &KernelTable, p: i32, q: i32, n_max: usize) -> Result<Complex64> {
    let config = table.config();
    let k = config.k;
    let top = p.unsigned_abs() as usize + n_max + 1;
    let mut sum = Complex64::default();
    for (m, site) in config.sources.iter().enumerate() {
        let regular = RegularTable::new(top, k * site.position.norm());
        let theta = site.position.arg();
        let n = n_max as i32;
        for l in -n..=n {
            sum += table.kernel(m, l, q)? * regular.j(p - l) * cis(l - p, theta);
        }
    }
    Ok(sum)
}

/// The square block of `S` over `range × range`, row `p`, column `q`.
pub fn scattering_matrix(
    config: &SourceConfig,
    range: RangeInclusive<i32>,
    n_max: usize,
    table: Option<&KernelTable>,
) -> Result<Vec<Vec<Complex64>>> {
    let owned;
    let table = match table {
        Some(t) => t,
        None => {
            owned = KernelTable::new(config, Default::default());
            &owned
        }
    };
    let orders: Vec<i32> = range.collect();
    orders
        .par_iter()
        .map(|&p| {
            orders
                .iter()
                .map(|&q| scattering_matrix_entry(table, p, q, n_max))
                .collect()
        })
        .collect()
}

/// `max |S_pq − conj(S_qp)|` over a square block.
pub fn hermitian_residual(s: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in s.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - s[j][i].conj()).norm());
        }
    }
    worst
}
