//! Sampled regularity estimates: doubling ratio, Ahlfors exponent and the
//! growth of sphere shells. These are sample maxima and fits, not certified
//! constants.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{dist_le, dist_lt, shortest_paths, MetricMeasureGraph, VertexId};

/// Geometric radii `lo, lo*factor, ...` up to and including `hi`.
pub fn geometric_radii(lo: f64, hi: f64, factor: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if !(lo > 0.0 && hi >= lo && factor > 1.0) {
        return out;
    }
    let mut r = lo;
    while dist_le(r, hi) {
        out.push(r);
        r *= factor;
    }
    out
}

/// Max over the sample of `m(B_2r(x)) / m(B_r(x))`, skipping empty balls.
pub fn doubling_constant(
    g: &MetricMeasureGraph,
    centers: &[VertexId],
    radii: &[f64],
) -> Result<f64> {
    if centers.is_empty() || radii.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut worst: f64 = 1.0;
    for &x in centers {
        let field = shortest_paths(g, x)?;
        for &r in radii {
            let inner = field.ball_measure(r);
            if inner <= 0.0 {
                continue;
            }
            worst = worst.max(field.ball_measure(2.0 * r) / inner);
        }
    }
    Ok(worst)
}

/// Doubling ratio over every vertex and radii doubling from half the
/// shortest edge to the diameter bound.
pub fn full_doubling_constant(g: &MetricMeasureGraph) -> Result<f64> {
    let centers: Vec<VertexId> = g.vertices().collect();
    let lo = if g.edges().is_empty() {
        1.0
    } else {
        0.5 * g.min_edge_len()
    };
    let hi = g.edges().iter().map(|e| e.2).sum::<f64>().max(lo);
    let radii = geometric_radii(lo, hi, core::f64::consts::SQRT_2);
    doubling_constant(g, &centers, &radii)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AhlforsEstimate {
    /// Least-squares slope of `log m(B_r)` against `log r`.
    pub exponent: f64,
    /// Smallest `C` with `C^-1 r^s <= m(B_r(x)) <= C r^s` on the sample.
    pub constant: f64,
}

pub fn ahlfors_exponent(
    g: &MetricMeasureGraph,
    centers: &[VertexId],
    radii: &[f64],
) -> Result<AhlforsEstimate> {
    if centers.is_empty() || radii.is_empty() {
        return Err(Error::EmptySample);
    }
    let lo = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = radii.iter().copied().fold(0.0, f64::max);
    if radii.len() < 2 || lo <= 0.0 || hi < 2.0 * lo {
        return Err(Error::DegenerateRadii);
    }

    let mut samples = Vec::with_capacity(centers.len() * radii.len());
    for &x in centers {
        let field = shortest_paths(g, x)?;
        for &r in radii {
            let m = field.ball_measure(r);
            if m > 0.0 {
                samples.push((r, m));
            }
        }
    }
    if samples.len() < 2 {
        return Err(Error::EmptySample);
    }

    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(r, m) in &samples {
        let (lx, ly) = (libm::log(r), libm::log(m));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() <= f64::EPSILON * n * sxx.abs().max(1.0) {
        return Err(Error::DegenerateRadii);
    }
    let exponent = (n * sxy - sx * sy) / denom;

    let constant = samples
        .iter()
        .map(|&(r, m)| {
            let model = libm::pow(r, exponent);
            (m / model).max(model / m)
        })
        .fold(1.0, f64::max);

    Ok(AhlforsEstimate { exponent, constant })
}

/// For each radius `r`, the shell mass `sum m(v)/h(v)` over
/// `{v : r - h(v) <= d(x, v) < r + h(v)}` divided by `r^(s-1)`.
///
/// Radii outside `(0, ecc(x)]` are skipped.
pub fn sphere_growth(
    g: &MetricMeasureGraph,
    x: VertexId,
    radii: &[f64],
    s: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(s >= 1.0) {
        return Err(Error::BadParam(alloc::format!("sphere growth needs s >= 1, got {s}")));
    }
    let field = shortest_paths(g, x)?;
    let ecc = field.eccentricity();
    let mut out = Vec::new();
    for &r in radii {
        if !(r > 0.0) || !dist_le(r, ecc) {
            continue;
        }
        let mut shell = 0.0;
        for v in g.vertices() {
            let h = g.local_scale(v);
            if h <= 0.0 {
                continue;
            }
            let d = field.dist(v);
            if dist_le(r - h, d) && dist_lt(d, r + h) {
                shell += g.measure(v) / h;
            }
        }
        out.push((r, shell / libm::pow(r, s - 1.0)));
    }
    Ok(out)
}
