//! Floating-point shape-curve tracer. It samples the shape curve of a
//! Lissajous motion and re-derives ε′, collisions, region itineraries and
//! syzygy sequences from geometry alone.

mod svg;

pub use svg::{
    farey_edges, halfplane_plot, shape_plot, svg_halfplane, svg_shape, write_csv, HalfPlanePlot,
    ShapePlot,
};

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lissajous::{NormalizedType, TypeMN};
use crate::syzygy::SyzygySeq;

/// Default amplitude ratio B/A.
pub const DEFAULT_RATIO: f64 = 0.05;

/// Numeric thresholds used by the tracer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// collision_scan minima below this count as collisions
    pub collision: f64,
    /// collision_scan minima above this count as collision-free
    pub clearance: f64,
    /// equator crossings this close to a collision point are rejected
    pub border_hit: f64,
    /// points this close to a region border are rejected
    pub on_border: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            collision: 1e-6,
            clearance: 1e-3,
            border_hit: 1e-9,
            on_border: 1e-12,
        }
    }
}

/// ω = e^{2πi/3}
pub fn omega_unit() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// ρ = e^{iπ/3}
pub fn rho() -> Complex64 {
    Complex64::from_polar(1.0, PI / 3.0)
}

/// Shape of the triangle (a,b,c): (a + bω + cω²)/(a + bω² + cω).
pub fn shape_function(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let w = omega_unit();
    let w2 = w * w;
    (a + b * w + c * w2) / (a + b * w2 + c * w)
}

/// Position on the Lissajous curve A·sin(2πmt) + iB·sin(2πnt).
pub fn lissajous_point(t: TypeMN, amp_a: f64, amp_b: f64, s: f64) -> Complex64 {
    Complex64::new(
        amp_a * (2.0 * PI * t.m as f64 * s).sin(),
        amp_b * (2.0 * PI * t.n as f64 * s).sin(),
    )
}

/// The three bodies a(t) = L(t−1/3), b(t) = L(t), c(t) = L(t+1/3).
pub fn bodies(t: TypeMN, amp_a: f64, amp_b: f64, s: f64) -> [Complex64; 3] {
    [
        lissajous_point(t, amp_a, amp_b, s - 1.0 / 3.0),
        lissajous_point(t, amp_a, amp_b, s),
        lissajous_point(t, amp_a, amp_b, s + 1.0 / 3.0),
    ]
}

/// Shape of the three bodies of the normalized type with amplitudes 1 and
/// `ratio`, computed from positions.
pub fn psi_geometric(nt: &NormalizedType, ratio: f64, s: f64) -> Complex64 {
    let [a, b, c] = bodies(nt.type_mn(), 1.0, ratio, s);
    shape_function(a, b, c)
}

/// Closed form ρ·e^{−4πimt}(1 + iκe^{6πiℓt})/(1 + iκe^{−6πiℓt}).
pub fn psi_closed_form(nt: &NormalizedType, ratio: f64, s: f64) -> Complex64 {
    let i = Complex64::i();
    let theta = 6.0 * PI * nt.ell as f64 * s;
    let num = Complex64::new(1.0, 0.0) + i * ratio * Complex64::from_polar(1.0, theta);
    let den = Complex64::new(1.0, 0.0) + i * ratio * Complex64::from_polar(1.0, -theta);
    rho() * Complex64::from_polar(1.0, -4.0 * PI * nt.m_star as f64 * s) * num / den
}

/// Start offset δ = −sgn(ℓ)/(600|mℓ|), standing in for the infinitesimal
/// start time 0∓.
pub fn start_offset(nt: &NormalizedType) -> f64 {
    -(nt.ell.signum() as f64) / (600.0 * (nt.m_star * nt.ell).abs() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeSample {
    pub t: f64,
    pub psi: Complex64,
}

fn require_odd(nt: &NormalizedType) -> Result<()> {
    if nt.ell % 2 == 0 {
        Err(Error::CollisionType {
            m: nt.m_star,
            n: nt.n_star,
        })
    } else {
        Ok(())
    }
}

/// `steps` samples of the closed-form curve over [δ, 1/3 + δ].
pub fn sample_curve(nt: &NormalizedType, ratio: f64, steps: usize) -> Result<Vec<ShapeSample>> {
    sample_span(nt, ratio, steps, 1.0 / 3.0)
}

/// `steps` samples over [δ, span + δ].
pub fn sample_span(
    nt: &NormalizedType,
    ratio: f64,
    steps: usize,
    span: f64,
) -> Result<Vec<ShapeSample>> {
    require_odd(nt)?;
    let delta = start_offset(nt);
    let last = steps.saturating_sub(1).max(1) as f64;
    Ok((0..steps)
        .map(|k| {
            let t = delta + span * k as f64 / last;
            ShapeSample {
                t,
                psi: psi_closed_form(nt, ratio, t),
            }
        })
        .collect())
}

fn epsilon_bits_at(nt: &NormalizedType, ratio: f64) -> Vec<u8> {
    let m = nt.m_star.abs();
    let sign_ell = nt.ell.signum() as f64;
    (1..=2 * m)
        .map(|k| {
            let t = (2 * k - 1) as f64 / (12 * m) as f64;
            let inside = 1.0 - psi_geometric(nt, ratio, t).norm();
            u8::from(inside.signum() != sign_ell)
        })
        .collect()
}

/// ε′ re-derived from geometry: at t_k = (2k−1)/(12|m|), ε′_k = 0 exactly
/// when sign(1 − |ψ|) = sign(ℓ). The ratio is halved until two consecutive
/// ratios give the same bits.
pub fn epsilon_oracle(nt: &NormalizedType) -> Result<Vec<u8>> {
    require_odd(nt)?;
    let mut ratio = DEFAULT_RATIO;
    let mut prev = epsilon_bits_at(nt, ratio);
    for _ in 0..20 {
        ratio /= 2.0;
        let next = epsilon_bits_at(nt, ratio);
        if next == prev {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Unstable(20))
}

/// Smallest pairwise distance of the three bodies at time `s`, amplitudes 1.
pub fn min_pair_distance(t: TypeMN, s: f64) -> f64 {
    let [a, b, c] = bodies(t, 1.0, 1.0, s);
    (a - b).norm().min((b - c).norm()).min((c - a).norm())
}

fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = (lo + hi) / 2.0;
    (x, f(x))
}

/// Minimum over one period of the smallest pairwise distance between the
/// bodies (amplitudes 1): a grid scan followed by golden-section refinement
/// around the lowest local minima.
pub fn collision_scan(t: TypeMN, steps: usize) -> f64 {
    let steps = steps.max(16);
    let h = 1.0 / steps as f64;
    let values: Vec<f64> = (0..steps)
        .map(|k| min_pair_distance(t, k as f64 * h))
        .collect();
    let mut minima: Vec<(f64, usize)> = (0..steps)
        .filter(|&k| {
            let prev = values[(k + steps - 1) % steps];
            let next = values[(k + 1) % steps];
            values[k] <= prev && values[k] <= next
        })
        .map(|k| (values[k], k))
        .collect();
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = values.iter().copied().fold(f64::INFINITY, f64::min);
    for &(_, k) in minima.iter().take(10) {
        let centre = k as f64 * h;
        let (_, v) = golden_section(|s| min_pair_distance(t, s), centre - h, centre + h);
        best = best.min(v);
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sector {
    I,
    II,
    III,
}

/// A region of the shape sphere: a sector of angle 2π/3 in one hemisphere.
/// The outer hemisphere |ψ| > 1 carries the sign −.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Region {
    pub sector: Sector,
    pub inner: bool,
}

impl Region {
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sector {
            Sector::I => "I",
            Sector::II => "II",
            Sector::III => "III",
        };
        write!(f, "{s}{}", if self.inner { '+' } else { '-' })
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('−', "-");
        let (body, sign) = s.split_at(s.len().saturating_sub(1));
        let sector = match body {
            "I" => Sector::I,
            "II" => Sector::II,
            "III" => Sector::III,
            _ => return Err(Error::Parse(format!("bad region `{s}`"))),
        };
        let inner = match sign {
            "+" => true,
            "-" => false,
            _ => return Err(Error::Parse(format!("bad region `{s}`"))),
        };
        Ok(Region { sector, inner })
    }
}

/// Region of a point, rejecting points within `tol` of the equator or of the
/// border rays arg ∈ {0, 2π/3, 4π/3}.
pub fn region_of_with(psi: Complex64, tol: f64) -> Result<Region> {
    let r = psi.norm();
    if (r - 1.0).abs() < tol {
        return Err(Error::OnBorder);
    }
    let arg = psi.arg().rem_euclid(2.0 * PI);
    let third = 2.0 * PI / 3.0;
    let pos = arg / third;
    let nearest = pos.round();
    if ((pos - nearest) * third).abs() < tol {
        return Err(Error::OnBorder);
    }
    let sector = match (pos.floor() as i64).rem_euclid(3) {
        0 => Sector::I,
        1 => Sector::II,
        _ => Sector::III,
    };
    Ok(Region {
        sector,
        inner: r < 1.0,
    })
}

pub fn region_of(psi: Complex64) -> Result<Region> {
    region_of_with(psi, Tolerances::default().on_border)
}

/// Sequence of distinct regions visited over [δ, 1/3 + δ].
pub fn itinerary(nt: &NormalizedType, ratio: f64, steps: usize) -> Result<Vec<Region>> {
    let mut out: Vec<Region> = Vec::new();
    for sample in sample_curve(nt, ratio, steps)? {
        if let Ok(r) = region_of(sample.psi) {
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Equator crossings over one period with their arc letters.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyTrace {
    /// crossing times in [δ, 1 + δ)
    pub times: Vec<f64>,
    /// arc letters in time order
    pub raw: SyzygySeq,
    /// `raw` rotated to start at letter 1
    pub sequence: SyzygySeq,
    /// number of leading letters moved to the end
    pub rotation: usize,
}

fn arc_letter(psi: Complex64) -> u8 {
    let arg = psi.arg().rem_euclid(2.0 * PI);
    ((arg / (2.0 * PI / 3.0)).floor() as u8).min(2) + 1
}

/// Detects the equator crossings of the geometric shape curve over one
/// period and labels each by the arc it passes: (1) for arg ∈ (0, 2π/3),
/// (2) for (2π/3, 4π/3), (3) for (4π/3, 2π).
pub fn syzygy_trace(nt: &NormalizedType, ratio: f64) -> Result<SyzygyTrace> {
    require_odd(nt)?;
    let tol = Tolerances::default();
    let delta = start_offset(nt);
    let steps = 64 * 6 * nt.ell.unsigned_abs() as usize + 64 * nt.m_star.unsigned_abs() as usize;
    let g = |s: f64| psi_geometric(nt, ratio, s).norm().ln();
    let collision_points = [
        Complex64::new(1.0, 0.0),
        omega_unit(),
        omega_unit() * omega_unit(),
    ];
    let mut times = Vec::new();
    let mut letters = Vec::new();
    let mut t0 = delta;
    let mut g0 = g(t0);
    for k in 1..=steps {
        let t1 = delta + k as f64 / steps as f64;
        let g1 = g(t1);
        if g0 == 0.0 || g0.signum() != g1.signum() {
            let (mut lo, mut hi, mut glo) = (t0, t1, g0);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid);
                if gm.signum() == glo.signum() && gm != 0.0 {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            let tc = 0.5 * (lo + hi);
            let psi = psi_geometric(nt, ratio, tc);
            if collision_points
                .iter()
                .any(|c| (psi - c).norm() < tol.border_hit)
            {
                return Err(Error::BorderHit(tc));
            }
            times.push(tc);
            letters.push(arc_letter(psi));
        }
        t0 = t1;
        g0 = g1;
    }
    let raw = SyzygySeq(letters);
    let rotation = raw.0.iter().position(|&a| a == 1).unwrap_or(0);
    let sequence = raw.rotated_to_one();
    Ok(SyzygyTrace {
        times,
        raw,
        sequence,
        rotation,
    })
}

/// The syzygy sequence of one period read from geometry, rotated to start
/// at letter 1.
pub fn syzygy_oracle(nt: &NormalizedType, ratio: f64) -> Result<SyzygySeq> {
    syzygy_trace(nt, ratio).map(|tr| tr.sequence)
}
