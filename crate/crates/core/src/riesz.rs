//! Truncated Riesz potential with two poles and the measure it induces.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{dist_le, dist_lt, shortest_paths, DistanceField, MetricMeasureGraph, VertexId};

/// Per-vertex values of the truncated potential `R^L_{x,y}` and the
/// weighted measure `m^L_{x,y} = R^L_{x,y} m`.
#[derive(Debug, Clone)]
pub struct RieszField {
    x: VertexId,
    y: VertexId,
    l: f64,
    pole_distance: f64,
    dist_x: Vec<f64>,
    dist_y: Vec<f64>,
    potential: Vec<f64>,
    in_ball: Vec<bool>,
    in_closed_ball: Vec<bool>,
    riesz_measure: Vec<f64>,
    total_mass: f64,
    degenerate: Vec<VertexId>,
}

impl RieszField {
    pub fn poles(&self) -> (VertexId, VertexId) {
        (self.x, self.y)
    }

    pub fn truncation(&self) -> f64 {
        self.l
    }

    /// `d(x, y)`.
    pub fn pole_distance(&self) -> f64 {
        self.pole_distance
    }

    /// Radius `2 L d(x, y)` of the two truncation balls.
    pub fn truncation_radius(&self) -> f64 {
        2.0 * self.l * self.pole_distance
    }

    pub fn dist_x(&self, v: VertexId) -> f64 {
        self.dist_x[v.0]
    }

    pub fn dist_y(&self, v: VertexId) -> f64 {
        self.dist_y[v.0]
    }

    /// `R^L_{x,y}(v)`; `+inf` marks a vertex whose ball around a pole has zero measure.
    pub fn potential(&self, v: VertexId) -> f64 {
        self.potential[v.0]
    }

    pub fn potentials(&self) -> &[f64] {
        &self.potential
    }

    /// Membership in the open truncation ball `B^L_{x,y}`.
    pub fn in_ball(&self, v: VertexId) -> bool {
        self.in_ball[v.0]
    }

    pub fn ball_mask(&self) -> &[bool] {
        &self.in_ball
    }

    /// Membership in the closed truncation ball.
    pub fn in_closed_ball(&self, v: VertexId) -> bool {
        self.in_closed_ball[v.0]
    }

    pub fn closed_ball_mask(&self) -> &[bool] {
        &self.in_closed_ball
    }

    /// `m^L_{x,y}({v})`.
    pub fn riesz_measure(&self, v: VertexId) -> f64 {
        self.riesz_measure[v.0]
    }

    pub fn riesz_measures(&self) -> &[f64] {
        &self.riesz_measure
    }

    /// `m^L_{x,y}(X)`.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Vertices where a pole ball of positive radius carried no measure.
    /// Their potential is `+inf` and they are excluded from the measure.
    pub fn degenerate(&self) -> &[VertexId] {
        &self.degenerate
    }
}

fn one_sided(field: &DistanceField, v: VertexId) -> Option<f64> {
    let d = field.dist(v);
    let m = field.ball_measure(d);
    (m > 0.0).then(|| d / m)
}

pub fn riesz_potential(
    g: &MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    l: f64,
) -> Result<RieszField> {
    g.check(x)?;
    g.check(y)?;
    if x == y {
        return Err(Error::SamePoles);
    }
    if !(l >= 1.0 && l.is_finite()) {
        return Err(Error::InvalidTruncation(l));
    }
    let fx = shortest_paths(g, x)?;
    let fy = shortest_paths(g, y)?;
    let pole_distance = fx.dist(y);
    let radius = 2.0 * l * pole_distance;

    let n = g.len();
    let mut potential = Vec::with_capacity(n);
    let mut in_ball = Vec::with_capacity(n);
    let mut in_closed_ball = Vec::with_capacity(n);
    let mut riesz_measure = Vec::with_capacity(n);
    let mut degenerate = Vec::new();

    for v in g.vertices() {
        let (dx, dy) = (fx.dist(v), fy.dist(v));
        let inside = dist_lt(dx, radius) || dist_lt(dy, radius);
        in_ball.push(inside);
        in_closed_ball.push(dist_le(dx, radius) || dist_le(dy, radius));

        if v == x || v == y || !inside {
            potential.push(0.0);
            riesz_measure.push(0.0);
            continue;
        }
        match (one_sided(&fx, v), one_sided(&fy, v)) {
            (Some(a), Some(b)) => {
                let r = a + b;
                potential.push(r);
                riesz_measure.push(r * g.measure(v));
            }
            _ => {
                degenerate.push(v);
                potential.push(f64::INFINITY);
                riesz_measure.push(0.0);
            }
        }
    }
    if !degenerate.is_empty() {
        log::warn!(
            "{} vertices have a zero-measure pole ball; potential set to +inf and excluded",
            degenerate.len()
        );
    }
    let total_mass = riesz_measure.iter().sum();

    Ok(RieszField {
        x,
        y,
        l,
        pole_distance,
        dist_x: fx.distances().to_vec(),
        dist_y: fy.distances().to_vec(),
        potential,
        in_ball,
        in_closed_ball,
        riesz_measure,
        total_mass,
        degenerate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassCheck {
    pub total_mass: f64,
    /// `8 C_D L d(x, y)`.
    pub bound: f64,
    pub pass: bool,
}

pub fn riesz_mass_check(field: &RieszField, doubling: f64) -> MassCheck {
    let bound = 8.0 * doubling * field.truncation() * field.pole_distance();
    MassCheck {
        total_mass: field.total_mass(),
        bound,
        pass: field.total_mass() <= bound,
    }
}
