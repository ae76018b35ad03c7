use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use num_integer::Integer;

use super::{omega_unit, sample_span, ShapeSample};
use crate::algebra::Psl2Mat;
use crate::classify::level_slope_of;
use crate::error::Result;
use crate::lissajous::{reduce_to_p0, NormalizedType};
use crate::surd::fixed_points;

const SIZE: f64 = 1000.0;
const CENTRE: f64 = 500.0;
const RADIUS: f64 = 450.0;

/// Radial compression r ↦ r/(1+r) of the ψ-plane into the unit disk.
pub fn compress(psi: Complex64) -> Complex64 {
    psi / (1.0 + psi.norm())
}

fn header(out: &mut String, comment: &str) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "<!-- {comment} -->");
    let _ = writeln!(
        out,
        "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>"
    );
}

/// A sampled shape curve over one full period in compressed coordinates.
#[derive(Clone, Debug)]
pub struct ShapePlot {
    pub points: Vec<Complex64>,
    pub svg: String,
}

impl ShapePlot {
    /// Number of times the polyline crosses the compressed equator |z| = 1/2.
    pub fn equator_crossings(&self) -> usize {
        self.points
            .windows(2)
            .filter(|w| (w[0].norm() - 0.5).signum() != (w[1].norm() - 0.5).signum())
            .count()
    }
}

fn to_px(z: Complex64) -> (f64, f64) {
    (CENTRE + RADIUS * z.re, CENTRE - RADIUS * z.im)
}

/// Builds the shape-sphere picture: compressed unit circle, six border rays,
/// the collision points and the curve over one period.
pub fn shape_plot(nt: &NormalizedType, ratio: f64, steps: usize) -> Result<ShapePlot> {
    let samples = sample_span(nt, ratio, steps, 1.0)?;
    let points: Vec<Complex64> = samples.iter().map(|s| compress(s.psi)).collect();
    let label = reduce_to_p0(nt)
        .and_then(level_slope_of)
        .map(|ls| format!("N={} slope={}", ls.level, ls.slope))
        .unwrap_or_default();
    let mut svg = String::new();
    header(
        &mut svg,
        &format!(
            "lissajous shape curve m={} n={} ell={} {label} ratio={ratio}",
            nt.m_star, nt.n_star, nt.ell
        ),
    );
    let _ = writeln!(
        svg,
        "<circle cx=\"{CENTRE}\" cy=\"{CENTRE}\" r=\"{RADIUS}\" fill=\"none\" stroke=\"#bbbbbb\"/>"
    );
    let _ = writeln!(
        svg,
        "<circle cx=\"{CENTRE}\" cy=\"{CENTRE}\" r=\"{}\" fill=\"#eef3ff\" stroke=\"black\"/>",
        RADIUS / 2.0
    );
    for k in 0..6 {
        let (x, y) = to_px(Complex64::from_polar(1.0, k as f64 * PI / 3.0));
        let _ = writeln!(
            svg,
            "<line x1=\"{CENTRE}\" y1=\"{CENTRE}\" x2=\"{x:.3}\" y2=\"{y:.3}\" stroke=\"#888888\" stroke-dasharray=\"4 4\"/>"
        );
    }
    let mut c = Complex64::new(0.5, 0.0);
    for _ in 0..3 {
        let (x, y) = to_px(c);
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"6\" fill=\"red\"/>"
        );
        c *= omega_unit();
    }
    svg.push_str("<polyline fill=\"none\" stroke=\"navy\" stroke-width=\"1.2\" points=\"");
    for z in &points {
        let (x, y) = to_px(*z);
        let _ = write!(svg, "{x:.3},{y:.3} ");
    }
    svg.push_str("\"/>\n</svg>\n");
    Ok(ShapePlot { points, svg })
}

pub fn svg_shape(
    nt: &NormalizedType,
    ratio: f64,
    steps: usize,
    path: impl AsRef<Path>,
) -> Result<ShapePlot> {
    let plot = shape_plot(nt, ratio, steps)?;
    fs::write(path, &plot.svg)?;
    Ok(plot)
}

/// Writes samples as CSV with header `t,re_psi,im_psi`.
pub fn write_csv(samples: &[ShapeSample], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from("t,re_psi,im_psi\n");
    for s in samples {
        let _ = writeln!(out, "{:.11e},{:.11e},{:.11e}", s.t, s.psi.re, s.psi.im);
    }
    fs::write(path, out)?;
    Ok(())
}

/// A Farey edge between the reduced fractions a/c and b/d.
pub type FareyEdge = ((i64, i64), (i64, i64));

/// Farey edges with both ends in [lo, hi] and denominators ≤ `max_den`:
/// pairs of reduced fractions a/c, b/d with |ad − bc| = 1.
pub fn farey_edges(lo: i64, hi: i64, max_den: i64) -> Vec<FareyEdge> {
    let mut fracs = Vec::new();
    for c in 1..=max_den {
        for a in lo * c..=hi * c {
            if a.gcd(&c) == 1 {
                fracs.push((a, c));
            }
        }
    }
    fracs.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
    let mut edges = Vec::new();
    for (i, &(a, c)) in fracs.iter().enumerate() {
        for &(b, d) in &fracs[i + 1..] {
            if (a * d - b * c).abs() == 1 {
                edges.push(((a, c), (b, d)));
            }
        }
    }
    edges
}

/// Geodesic axis of a hyperbolic element over the Farey tessellation.
#[derive(Clone, Debug)]
pub struct HalfPlanePlot {
    /// the two fixed points, `+√` root first
    pub endpoints: (f64, f64),
    pub window: (i64, i64),
    pub edges: Vec<FareyEdge>,
    pub verticals: Vec<i64>,
    pub svg: String,
}

pub fn halfplane_plot(mat: &Psl2Mat, max_den: i64) -> Result<HalfPlanePlot> {
    let (x, y) = fixed_points(mat)?;
    let endpoints = (x.approx(), y.approx());
    let lo = endpoints.0.min(endpoints.1).floor() as i64 - 1;
    let hi = endpoints.0.max(endpoints.1).ceil() as i64 + 1;
    let edges = farey_edges(lo, hi, max_den);
    let verticals: Vec<i64> = (lo..=hi).collect();
    let scale = (SIZE - 100.0) / (hi - lo) as f64;
    let base = SIZE - 100.0;
    let px = |v: f64| 50.0 + (v - lo as f64) * scale;
    let mut svg = String::new();
    header(
        &mut svg,
        &format!("lissajous half-plane axis matrix={mat} endpoints={x} {y} max_den={max_den}"),
    );
    let _ = writeln!(
        svg,
        "<line x1=\"0\" y1=\"{base}\" x2=\"{SIZE}\" y2=\"{base}\" stroke=\"black\"/>"
    );
    for &v in &verticals {
        let _ = writeln!(
            svg,
            "<line x1=\"{0:.3}\" y1=\"{base}\" x2=\"{0:.3}\" y2=\"0\" stroke=\"#777777\" stroke-width=\"0.8\"/>",
            px(v as f64)
        );
    }
    let arc = |svg: &mut String, u: f64, v: f64, style: &str| {
        let (x1, x2) = (px(u.min(v)), px(u.max(v)));
        let r = (x2 - x1) / 2.0;
        let _ = writeln!(
            svg,
            "<path d=\"M {x1:.3} {base} A {r:.3} {r:.3} 0 0 1 {x2:.3} {base}\" fill=\"none\" {style}/>"
        );
    };
    for &((a, c), (b, d)) in &edges {
        arc(
            &mut svg,
            a as f64 / c as f64,
            b as f64 / d as f64,
            "stroke=\"#777777\" stroke-width=\"0.8\"",
        );
    }
    arc(
        &mut svg,
        endpoints.0,
        endpoints.1,
        "stroke=\"crimson\" stroke-width=\"2.5\"",
    );
    svg.push_str("</svg>\n");
    Ok(HalfPlanePlot {
        endpoints,
        window: (lo, hi),
        edges,
        verticals,
        svg,
    })
}

pub fn svg_halfplane(mat: &Psl2Mat, max_den: i64, path: impl AsRef<Path>) -> Result<HalfPlanePlot> {
    let plot = halfplane_plot(mat, max_den)?;
    fs::write(path, &plot.svg)?;
    Ok(plot)
}
