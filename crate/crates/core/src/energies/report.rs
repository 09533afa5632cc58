use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{MetricMeasureGraph, VertexId};
use crate::riesz::riesz_potential;
use crate::separating::validate;

use super::capacity::capacity;
use super::cut::{boundary_vertex_energy, modulus_connecting, CutWitness};
use super::hausdorff::{codim_hausdorff, Gauge};
use super::minkowski::{minkowski_content, RadiusSchedule};
use super::perimeter::{perimeter, PerimeterMode};

/// Every boundary energy of one separating set.
///
/// `p` is the exponent of the Minkowski and Hausdorff energies; perimeter,
/// capacity and modulus are the `p = 1` quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub x: VertexId,
    pub y: VertexId,
    pub l: f64,
    pub p: f64,
    /// Perimeter against `m` weighted by the potential.
    pub bp: f64,
    /// Perimeter against `m^L`.
    pub bp_r: f64,
    /// Capacity of `Ω` in its one-hop neighbourhood against `m^L`.
    pub bc: f64,
    /// Minkowski content of `Ω` against `m^L`, first shell.
    pub bmc: f64,
    /// Minkowski content of the vertex boundary of `Ω`.
    pub bmc0: f64,
    /// Hausdorff content of the vertex boundary with gauge `m^L(B_r(z)) / r^p`.
    pub bh_f: f64,
    /// Hausdorff content with gauge `R(z) m(B_r(z)) / r^p`.
    pub bh_g: f64,
    /// Modulus of the connecting family inside the truncation ball.
    pub mod1: f64,
    /// `sum m^L(v)/h(v)` over the vertex boundary of `Ω`.
    pub bam_local: f64,
    /// Optimal separating set realizing `mod1`.
    pub witness: CutWitness,
}

pub fn energy_report(
    g: &MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    omega: &[VertexId],
    l: f64,
    p: f64,
) -> Result<EnergyReport> {
    let field = riesz_potential(g, x, y, l)?;
    let ss = validate(g, omega, x, y)?;
    let w = field.riesz_measures();

    let bp = perimeter(g, ss.boundary(), &field, PerimeterMode::Riesz);
    let bp_r = perimeter(g, ss.boundary(), &field, PerimeterMode::Measure);
    let bc = capacity(g, ss.mask(), w, 1)?;
    let bmc = minkowski_content(g, ss.mask(), w, p, &RadiusSchedule::FirstShell)?;

    let edge: Vec<VertexId> = ss.boundary().vertices();
    let edge_mask = g.mask(&edge);
    let bmc0 = minkowski_content(g, &edge_mask, w, p, &RadiusSchedule::FirstShell)?;
    let delta = edge.iter().map(|&v| g.local_scale(v)).fold(0.0, f64::max);
    let bh_f = codim_hausdorff(g, &edge_mask, delta, p, Gauge::Measure(w))?.best();
    let gauge = Gauge::Potential { potential: field.potentials(), measure: g.measures() };
    let bh_g = codim_hausdorff(g, &edge_mask, delta, p, gauge)?.best();
    let bam_local = boundary_vertex_energy(g, &edge, w);

    let modulus = modulus_connecting(g, &field, None)?;
    Ok(EnergyReport {
        x,
        y,
        l,
        p,
        bp,
        bp_r,
        bc,
        bmc,
        bmc0,
        bh_f,
        bh_g,
        mod1: modulus.value,
        bam_local,
        witness: modulus.witness,
    })
}
