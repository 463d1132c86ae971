//! Active source amplitudes `b_{m,l}`.
//!
//! The amplitudes are linear in the incident coefficients,
//! `b_{m,l} = Σ_n b_{m,ln} A_n`, with an incident-independent kernel
//!
//! ```text
//! b_{m,ln} = (k a_m / 4) Σ_p U_{n+p}^+(x_m) (−1)^p / (l+p)
//!            · [J_p J_l' − J_p' J_l](k a_m)
//!            · [e^{−i(l+p)φ₂} − e^{−i(l+p)φ₁}]
//! ```
//!
//! where the `p = −l` term vanishes. For a plane wave the `n` sum collapses
//! and [`amplitudes_planewave`] evaluates the resulting single series
//! directly. [`quadrature_oracle`] integrates the arc form of the amplitudes
//! numerically and serves as an independent check of both.

use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cylwave::{check_wavenumber, cis, OutgoingTable, Point2, RegularTable};
use crate::error::{Error, Result};
use crate::geometry::{SourceConfig, SourceSite};
use crate::incident::{i_pow, IncidentField};
use crate::quadrature::{integrate, QuadratureOptions};

/// Orders added beyond `max(|l|, ⌈k a_m⌉)` before the adaptive `p` sum starts checking convergence.
pub const P_MARGIN: usize = 25;
/// Shells beyond the starting `P` the adaptive sum may add.
pub const P_EXTENSION_CAP: usize = 200;
const P_REL_TOL: f64 = 1e-14;
const FIXED_TAIL_TOL: f64 = 1e-10;
const LARGE_M_WARN_KA: f64 = 0.3;

/// How the `p` series in the kernel is cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PTruncation {
    /// Start at `max(|l|, ⌈k a_m⌉) + 25` and add shells until three in a row
    /// each change the sum by less than `1e-14` relative.
    #[default]
    Adaptive,
    /// Sum exactly `p ∈ [−P, P]`; fails if the outer shells are not negligible.
    Fixed(usize),
}

/// Per-site Bessel data shared by every kernel entry of that site.
#[derive(Debug)]
struct SiteKernel {
    alpha: f64,
    /// `J_p(k a_m)`
    arc: RegularTable,
    /// `J_q(k |x_m|)`
    centre: RegularTable,
    theta: f64,
    phi1: f64,
    phi2: f64,
}

impl SiteKernel {
    fn new(site: &SourceSite, k: f64, centre_orders: usize) -> Self {
        let alpha = k * site.radius;
        let arc_orders = alpha.ceil() as usize + 2 * (crate::cylwave::ORDER_MAX as usize) + P_MARGIN + P_EXTENSION_CAP;
        Self {
            alpha,
            arc: RegularTable::new(arc_orders, alpha),
            centre: RegularTable::new(centre_orders, k * site.position.norm()),
            theta: site.position.arg(),
            phi1: site.arc_start,
            phi2: site.arc_end_unwrapped(),
        }
    }

    /// `J_p J_l' − J_p' J_l` at `k a_m`.
    #[inline]
    fn bracket(&self, p: i32, l: i32) -> f64 {
        self.arc.j(p) * self.arc.jp(l) - self.arc.jp(p) * self.arc.j(l)
    }

    /// `e^{−iqφ₂} − e^{−iqφ₁}`.
    #[inline]
    fn arc_difference(&self, q: i32) -> Complex64 {
        cis(-q, self.phi2) - cis(-q, self.phi1)
    }

    fn p_start(&self, l: i32) -> usize {
        (l.unsigned_abs() as usize).max(self.alpha.ceil() as usize) + P_MARGIN
    }

    fn p_limit(&self) -> usize {
        self.arc.max_order()
    }
}

/// Sums `term(p)` over symmetric shells `p = ±P` according to `trunc`.
fn shell_sum(
    start: usize,
    limit: usize,
    trunc: PTruncation,
    term: impl Fn(i32) -> Complex64,
) -> Result<(Complex64, usize)> {
    let shell = |q: usize| -> Complex64 {
        let q = q as i32;
        if q == 0 {
            term(0)
        } else {
            term(q) + term(-q)
        }
    };
    match trunc {
        PTruncation::Fixed(p) => {
            if p > limit {
                return Err(Error::Parameter(format!(
                    "p truncation {p} exceeds the tabulated {limit}"
                )));
            }
            let shells: Vec<Complex64> = (0..=p).map(shell).collect();
            let sum: Complex64 = shells.iter().sum();
            let tail = shells.iter().rev().take(3.min(p)).map(|s| s.norm()).fold(0.0, f64::max);
            let rel = if sum.norm() > 0.0 { tail / sum.norm() } else { tail };
            if rel > FIXED_TAIL_TOL {
                return Err(Error::Truncation {
                    terms: 2 * p + 1,
                    tail: rel,
                });
            }
            Ok((sum, p))
        }
        PTruncation::Adaptive => {
            let start = start.min(limit);
            let mut sum = Complex64::default();
            let mut quiet = 0;
            for q in 0..=limit {
                let s = shell(q);
                sum += s;
                if q + 2 < start {
                    continue;
                }
                if s.norm() <= P_REL_TOL * sum.norm() {
                    quiet += 1;
                    if quiet >= 3 && q >= start {
                        return Ok((sum, q));
                    }
                } else {
                    quiet = 0;
                }
                if q >= start + P_EXTENSION_CAP {
                    break;
                }
            }
            Err(Error::Truncation {
                terms: 2 * limit.min(start + P_EXTENSION_CAP) + 1,
                tail: f64::NAN,
            })
        }
    }
}

/// Incident-independent kernel `b_{m,ln}` for one layout, with a cache of
/// evaluated entries.
///
/// The cache takes concurrent readers and serialises insertions.
#[derive(Debug)]
pub struct KernelTable {
    config: SourceConfig,
    sites: Vec<SiteKernel>,
    truncation: PTruncation,
    cache: RwLock<HashMap<(usize, i32, i32), Complex64>>,
}

impl KernelTable {
    pub fn new(config: &SourceConfig, truncation: PTruncation) -> Self {
        let k = config.k;
        let incident_orders = crate::incident::plane_wave_truncation(k, config.outer_radius());
        let sites = config
            .sources
            .iter()
            .map(|s| {
                let centre_orders = incident_orders
                    + (k * s.radius).ceil() as usize
                    + crate::cylwave::ORDER_MAX as usize
                    + P_MARGIN
                    + P_EXTENSION_CAP;
                SiteKernel::new(s, k, centre_orders)
            })
            .collect();
        Self {
            config: config.clone(),
            sites,
            truncation,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &SourceConfig {
        &self.config
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }

    fn site(&self, m: usize) -> Result<&SiteKernel> {
        self.sites
            .get(m)
            .ok_or_else(|| Error::Parameter(format!("site index {m} out of range (M = {})", self.sites.len())))
    }

    /// One term of the `p` series, exactly zero at `p = −l`.
    pub fn kernel_term(&self, m: usize, l: i32, n: i32, p: i32) -> Result<Complex64> {
        let site = self.site(m)?;
        if p.unsigned_abs() as usize > site.p_limit() || (n + p).unsigned_abs() as usize > site.centre.max_order() {
            return Err(Error::Parameter(format!(
                "orders (n={n}, p={p}) exceed the tabulated range"
            )));
        }
        Ok(Self::term(site, l, n, p))
    }

    #[inline]
    fn term(site: &SiteKernel, l: i32, n: i32, p: i32) -> Complex64 {
        if p + l == 0 {
            return Complex64::default();
        }
        let q = n + p;
        let u = cis(q, site.theta) * site.centre.j(q);
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        u * (sign * site.bracket(p, l) / (l + p) as f64) * site.arc_difference(l + p)
    }

    /// `b_{m,ln}`, cached.
    pub fn kernel(&self, m: usize, l: i32, n: i32) -> Result<Complex64> {
        if let Some(v) = self.cache.read().ok().and_then(|c| c.get(&(m, l, n)).copied()) {
            return Ok(v);
        }
        let (value, _) = self.kernel_uncached(m, l, n)?;
        if let Ok(mut c) = self.cache.write() {
            c.insert((m, l, n), value);
        }
        Ok(value)
    }

    /// `b_{m,ln}` together with the `P` at which the `p` series was cut.
    pub fn kernel_uncached(&self, m: usize, l: i32, n: i32) -> Result<(Complex64, usize)> {
        let site = self.site(m)?;
        let reach = site.centre.max_order() as i64 - n.unsigned_abs() as i64;
        let limit = site.p_limit().min(reach.max(0) as usize);
        let (sum, p) = shell_sum(site.p_start(l), limit, self.truncation, |p| Self::term(site, l, n, p))?;
        Ok((sum * (site.alpha / 4.0), p))
    }

    /// `b_{m,l} = Σ_n b_{m,ln} A_n` for `l ∈ [−N, N]`.
    pub fn amplitudes(&self, incident: &IncidentField, n_max: usize) -> Result<AmplitudeSet> {
        check_order_bound(n_max)?;
        let k = self.config.k;
        let range = incident.order_range(k, self.config.outer_radius());
        let coeffs: Vec<(i32, Complex64)> = range
            .map(|n| (n, incident.coefficient(n)))
            .filter(|(_, a)| *a != Complex64::default())
            .collect();
        let width = 2 * n_max + 1;
        let values = (0..self.sites.len() * width)
            .into_par_iter()
            .map(|idx| {
                let (m, l) = (idx / width, (idx % width) as i32 - n_max as i32);
                coeffs
                    .iter()
                    .map(|&(n, a)| self.kernel(m, l, n).map(|b| b * a))
                    .sum::<Result<Complex64>>()
            })
            .collect::<Result<Vec<_>>>()?;
        AmplitudeSet::from_values(self.config.clone(), incident.clone(), n_max, values)
    }
}

fn check_order_bound(n_max: usize) -> Result<()> {
    if n_max > crate::cylwave::ORDER_MAX as usize {
        return Err(Error::OrderOutOfRange {
            order: n_max as i64,
            max: crate::cylwave::ORDER_MAX as i64,
        });
    }
    Ok(())
}

/// `b_{m,ln}` for a single entry.
pub fn kernel_coefficient(config: &SourceConfig, m: usize, l: i32, n: i32, trunc: PTruncation) -> Result<Complex64> {
    KernelTable::new(config, trunc).kernel(m, l, n)
}

/// Amplitudes for any incident field via the kernel contraction.
pub fn amplitudes_general(
    config: &SourceConfig,
    incident: &IncidentField,
    n_max: usize,
    trunc: PTruncation,
) -> Result<AmplitudeSet> {
    KernelTable::new(config, trunc).amplitudes(incident, n_max)
}

/// Amplitudes for the unit plane wave travelling in direction `psi`,
///
/// `b_{m,l} = u_ψ(x_m) (k a_m/4) Σ_p [J_p J_l' − J_p' J_l] i^p e^{ipψ}/(p+l) [e^{−i(p+l)φ₂} − e^{−i(p+l)φ₁}]`.
pub fn amplitudes_planewave(config: &SourceConfig, psi: f64, n_max: usize, trunc: PTruncation) -> Result<AmplitudeSet> {
    check_order_bound(n_max)?;
    let k = config.k;
    let incident = IncidentField::plane_wave(psi);
    let sites: Vec<SiteKernel> = config.sources.iter().map(|s| SiteKernel::new(s, k, 0)).collect();
    let width = 2 * n_max + 1;
    let values = (0..sites.len() * width)
        .into_par_iter()
        .map(|idx| {
            let (m, l) = (idx / width, (idx % width) as i32 - n_max as i32);
            let site = &sites[m];
            let phase = incident.evaluate(k, config.sources[m].position);
            let (sum, _) = shell_sum(site.p_start(l), site.p_limit(), trunc, |p| {
                if p + l == 0 {
                    return Complex64::default();
                }
                i_pow(p) * cis(p, psi) * (site.bracket(p, l) / (p + l) as f64) * site.arc_difference(p + l)
            })?;
            Ok(phase * sum * (site.alpha / 4.0))
        })
        .collect::<Result<Vec<_>>>()?;
    AmplitudeSet::from_values(config.clone(), incident, n_max, values)
}

/// Settings for [`quadrature_oracle_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions {
    /// Initial panel count; `None` uses `8·max(|l|, ⌈k a_m⌉, 4)`.
    pub initial_panels: Option<usize>,
}

/// `b_{m,l}` by direct numerical integration over the site's arc:
///
/// `b_{m,l} = −(i/4) k a_m ∫ dφ e^{−ilφ} [u_i(y) J_l'(k a_m) − J_l(k a_m) k⁻¹ ∂_n u_i(y)]`,
/// with `y = x_m + a_m ê(φ)` and `n = ê(φ)`.
pub fn quadrature_oracle(config: &SourceConfig, incident: &IncidentField, m: usize, l: i32) -> Result<Complex64> {
    quadrature_oracle_with(config, incident, m, l, OracleOptions::default())
}

pub fn quadrature_oracle_with(
    config: &SourceConfig,
    incident: &IncidentField,
    m: usize,
    l: i32,
    opts: OracleOptions,
) -> Result<Complex64> {
    let site = config
        .sources
        .get(m)
        .ok_or_else(|| Error::Parameter(format!("site index {m} out of range")))?;
    let k = config.k;
    let alpha = k * site.radius;
    let jl = crate::cylwave::bessel_j(l, alpha)?;
    let jlp = crate::cylwave::bessel_j_prime(l, alpha)?;
    let panels = opts
        .initial_panels
        .unwrap_or_else(|| 8 * (l.unsigned_abs() as usize).max(alpha.ceil() as usize).max(4));
    let integrand = |phi: f64| {
        let normal = Point2::from_polar(1.0, phi);
        let y = site.position + normal * site.radius;
        let u = incident.evaluate(k, y);
        let du = incident.normal_derivative(k, y, normal);
        cis(-l, phi) * (u * jlp - du * (jl / k))
    };
    let qopts = QuadratureOptions {
        initial_panels: panels,
        ..Default::default()
    };
    let integral = integrate(integrand, site.arc_start, site.arc_end_unwrapped(), qopts)?;
    Ok(Complex64::new(0.0, -0.25 * alpha) * integral.value)
}

/// Source amplitudes `b_{m,l}`, `m ∈ [0, M)`, `l ∈ [−N, N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    n_max: usize,
    values: Vec<Complex64>,
    config: SourceConfig,
    incident: IncidentField,
}

/// JSON form: `{"N": int, "M": int, "values": [[re, im], ...]}`, row-major by `(m, l)`.
#[derive(Debug, Serialize, Deserialize)]
struct AmplitudeRecord {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    values: Vec<[f64; 2]>,
}

impl AmplitudeSet {
    pub fn from_values(
        config: SourceConfig,
        incident: IncidentField,
        n_max: usize,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        let expect = config.len() * (2 * n_max + 1);
        if values.len() != expect {
            return Err(Error::Parameter(format!(
                "expected {expect} amplitudes for M = {} and N = {n_max}, got {}",
                config.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Overflow {
                what: format!("amplitude entry {i}"),
            });
        }
        Ok(Self {
            n_max,
            values,
            config,
            incident,
        })
    }

    pub fn zeros(config: SourceConfig, incident: IncidentField, n_max: usize) -> Self {
        let values = vec![Complex64::default(); config.len() * (2 * n_max + 1)];
        Self {
            n_max,
            values,
            config,
            incident,
        }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.n_max
    }

    pub fn site_count(&self) -> usize {
        self.config.len()
    }

    pub fn config(&self) -> &SourceConfig {
        &self.config
    }

    pub fn incident(&self) -> &IncidentField {
        &self.incident
    }

    /// `b_{m,l}`; zero for `|l| > N`.
    pub fn get(&self, m: usize, l: i32) -> Complex64 {
        if l.unsigned_abs() as usize > self.n_max {
            return Complex64::default();
        }
        self.values[m * (2 * self.n_max + 1) + (l + self.n_max as i32) as usize]
    }

    /// Row `m`, indexed by `l + N`.
    pub fn row(&self, m: usize) -> &[Complex64] {
        let w = 2 * self.n_max + 1;
        &self.values[m * w..(m + 1) * w]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Same amplitudes with orders `|l| > n` dropped.
    pub fn truncated(&self, n: usize) -> AmplitudeSet {
        let n = n.min(self.n_max);
        let values = (0..self.site_count())
            .flat_map(|m| (-(n as i32)..=n as i32).map(move |l| (m, l)))
            .map(|(m, l)| self.get(m, l))
            .collect();
        AmplitudeSet {
            n_max: n,
            values,
            config: self.config.clone(),
            incident: self.incident.clone(),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        let record = AmplitudeRecord {
            n: self.n_max,
            m: self.site_count(),
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        };
        Ok(serde_json::to_string(&record)?)
    }

    /// Reads the JSON form back, attaching the layout and incident field it was built for.
    pub fn from_json_str(text: &str, config: SourceConfig, incident: IncidentField) -> Result<Self> {
        let r: AmplitudeRecord = serde_json::from_str(text)?;
        if r.m != config.len() {
            return Err(Error::Parameter(format!(
                "amplitude file has M = {} but the layout has {} sources",
                r.m,
                config.len()
            )));
        }
        let values = r.values.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        Self::from_values(config, incident, r.n, values)
    }
}

/// `u_d(p) = Σ_m Σ_{|l|≤N} b_{m,l} V_l^+(p − x_m)`.
pub fn source_field(amps: &AmplitudeSet, p: Point2) -> Result<Complex64> {
    let k = amps.config.k;
    check_wavenumber(k)?;
    let n = amps.n_max as i32;
    let mut total = Complex64::default();
    for (m, site) in amps.config.sources.iter().enumerate() {
        let d = p - site.position;
        let r = d.norm();
        if r == 0.0 {
            return Err(Error::Singularity(format!("source field evaluated at source {m}")));
        }
        let table = OutgoingTable::up_to_overflow(amps.n_max, k * r);
        if table.max_order() + 1 < amps.n_max {
            return Err(Error::Overflow {
                what: format!("multipoles of source {m} at distance {r:e}"),
            });
        }
        let theta = d.arg();
        let row = amps.row(m);
        total += (-n..=n)
            .map(|l| row[(l + n) as usize] * table.h(l) * cis(l, theta))
            .sum::<Complex64>();
    }
    Ok(total)
}

/// Leading-order amplitudes for small `k a_m`: only monopoles and dipoles,
///
/// `b_{m,0} = −(i/2) k a_m Σ_n A_n U_n^+'(x_m)`,
/// `b_{m,±1} = ±(i/4) k a_m e^{∓iθ_m} Σ_n A_n U_n^+(x_m)`.
pub fn large_m_amplitudes(config: &SourceConfig, incident: &IncidentField) -> Result<AmplitudeSet> {
    let k = config.k;
    let mut values = Vec::with_capacity(3 * config.len());
    for (m, site) in config.sources.iter().enumerate() {
        let alpha = k * site.radius;
        if alpha > LARGE_M_WARN_KA {
            log::warn!("source {m}: k a = {alpha:.3} is not small; the monopole/dipole limit is inaccurate");
        }
        let b = site.position.norm();
        let theta = site.position.arg();
        let range = incident.order_range(k, b);
        let top = range.start().unsigned_abs().max(range.end().unsigned_abs()) as usize;
        let table = RegularTable::new(top + 1, k * b);
        let (mut regular, mut derivative) = (Complex64::default(), Complex64::default());
        for n in range {
            let a = incident.coefficient(n) * cis(n, theta);
            regular += a * table.j(n);
            derivative += a * table.jp(n);
        }
        let pref = Complex64::new(0.0, 0.25 * alpha);
        values.push(-pref * cis(1, theta) * regular);
        values.push(pref * -2.0 * derivative);
        values.push(pref * cis(-1, theta) * regular);
    }
    AmplitudeSet::from_values(config.clone(), incident.clone(), 1, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::symmetric_config;

    #[test]
    fn p_equals_minus_l_term_is_zero() {
        let c = symmetric_config(4, 1.0, 2.0).unwrap();
        let t = KernelTable::new(&c, PTruncation::Adaptive);
        for l in -5..=5 {
            assert_eq!(t.kernel_term(1, l, 3, -l).unwrap(), Complex64::default());
        }
        assert_ne!(t.kernel_term(1, 2, 3, 1).unwrap(), Complex64::default());
    }

    #[test]
    fn single_mode_picks_kernel_column() {
        let c = symmetric_config(3, 1.0, 1.5).unwrap();
        let table = KernelTable::new(&c, PTruncation::Adaptive);
        let amps = table.amplitudes(&IncidentField::single_mode(2), 4).unwrap();
        for m in 0..3 {
            for l in -4..=4 {
                assert_eq!(amps.get(m, l), table.kernel(m, l, 2).unwrap());
            }
        }
        assert!(table.cached_entries() >= 27);
    }

    #[test]
    fn zero_incident_gives_zero_amplitudes() {
        let c = symmetric_config(4, 1.0, 1.0).unwrap();
        let amps = amplitudes_general(&c, &IncidentField::zero(), 3, PTruncation::Adaptive).unwrap();
        assert!(amps.values().iter().all(|v| *v == Complex64::default()));
        assert_eq!(
            quadrature_oracle(&c, &IncidentField::zero(), 0, 2).unwrap(),
            Complex64::default()
        );
        assert_eq!(
            source_field(&amps, Point2::new(0.1, 0.2)).unwrap(),
            Complex64::default()
        );
    }

    #[test]
    fn fixed_truncation_reports_unconverged_tail() {
        let c = symmetric_config(4, 1.0, 5.0).unwrap();
        let r = kernel_coefficient(&c, 0, 0, 0, PTruncation::Fixed(1));
        assert!(matches!(r, Err(Error::Truncation { .. })));
        let adaptive = kernel_coefficient(&c, 0, 0, 0, PTruncation::Adaptive).unwrap();
        let fixed = kernel_coefficient(&c, 0, 0, 0, PTruncation::Fixed(60)).unwrap();
        assert!((adaptive - fixed).norm() <= 1e-13 * adaptive.norm());
    }

    #[test]
    fn plane_wave_row_follows_phase() {
        // shifting a source by one wavelength along ψ leaves its row unchanged
        let psi = 0.4;
        let k = 3.0;
        let c = symmetric_config(4, 1.0, k).unwrap();
        let mut shifted = c.clone();
        let wavelength = Point2::from_polar(std::f64::consts::TAU / k, psi);
        shifted.sources[2].position = shifted.sources[2].position + wavelength;
        let a = amplitudes_planewave(&c, psi, 4, PTruncation::Adaptive).unwrap();
        let b = amplitudes_planewave(&shifted, psi, 4, PTruncation::Adaptive).unwrap();
        for l in -4..=4 {
            assert!((a.get(2, l) - b.get(2, l)).norm() < 1e-13);
        }
    }

    #[test]
    fn source_field_rejects_source_points() {
        let c = symmetric_config(3, 1.0, 1.0).unwrap();
        let amps = amplitudes_planewave(&c, 0.0, 3, PTruncation::Adaptive).unwrap();
        assert!(matches!(
            source_field(&amps, c.sources[1].position),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn large_m_has_only_monopoles_and_dipoles() {
        let c = symmetric_config(64, 1.0, 1.0).unwrap();
        let amps = large_m_amplitudes(&c, &IncidentField::plane_wave_deg(17.0)).unwrap();
        assert_eq!(amps.order(), 1);
        assert_eq!(amps.get(5, 2), Complex64::default());
        assert_eq!(amps.get(5, -3), Complex64::default());
    }

    #[test]
    fn json_export_layout() {
        let c = symmetric_config(3, 1.0, 1.0).unwrap();
        let f = IncidentField::plane_wave(0.2);
        let amps = amplitudes_planewave(&c, 0.2, 2, PTruncation::Adaptive).unwrap();
        let text = amps.to_json_string().unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["N"], 2);
        assert_eq!(v["M"], 3);
        assert_eq!(v["values"].as_array().unwrap().len(), 15);
        // entry (m=1, l=-2) sits at row-major index 1·5 + 0
        assert_eq!(v["values"][5][0].as_f64().unwrap(), amps.get(1, -2).re);
        let back = AmplitudeSet::from_json_str(&text, c.clone(), f).unwrap();
        assert_eq!(back.values(), amps.values());
        assert!(
            AmplitudeSet::from_json_str(&text, symmetric_config(4, 1.0, 1.0).unwrap(), IncidentField::zero()).is_err()
        );
    }

    #[test]
    fn truncated_keeps_low_orders() {
        let c = symmetric_config(3, 1.0, 1.0).unwrap();
        let amps = amplitudes_planewave(&c, 0.2, 5, PTruncation::Adaptive).unwrap();
        let t = amps.truncated(2);
        assert_eq!(t.order(), 2);
        assert_eq!(t.get(2, -2), amps.get(2, -2));
        assert_eq!(t.get(2, 3), Complex64::default());
    }
}
