//! Cut energies over separating sets, solved exactly by node-split max-flow.
//!
//! Every separating set `Ω` from `x` to `y` has an inner boundary meeting
//! each `x`-`y` path, and every vertex cut avoiding `x`, `y` and the
//! neighbours of `y` is the inner boundary of some separating set. So the
//! infimum of `sum_{v ∈ ∂Ω} m^L(v)/h(v)` is a minimum vertex cut with those
//! vertices made uncuttable.
//!
//! When several separating sets attain the minimum, the witness is the
//! largest one (it contains every other optimal set), which is also the
//! optimum whose membership vector is lexicographically largest.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{MetricMeasureGraph, VertexId};
use crate::riesz::{riesz_potential, RieszField};
use crate::separating::{enumerate_separating_sets, validate_mask, DEFAULT_ENUMERATION_LIMIT};

use super::capacity::capacity;
use super::minkowski::{minkowski_content, RadiusSchedule};
use super::perimeter::{perimeter, PerimeterMode};

/// An optimal separating set with its energy.
#[derive(Debug, Clone, PartialEq)]
pub struct CutWitness {
    pub value: f64,
    /// Inner boundary of `omega`, sorted.
    pub boundary: Vec<VertexId>,
    /// Members of the separating set, sorted.
    pub omega: Vec<VertexId>,
}

/// `sum_{v in boundary} w(v) / h(v)`.
pub fn boundary_vertex_energy(g: &MetricMeasureGraph, boundary: &[VertexId], weights: &[f64]) -> f64 {
    boundary
        .iter()
        .filter(|v| g.local_scale(**v) > 0.0)
        .map(|&v| weights[v.0] / g.local_scale(v))
        .sum()
}

fn vertex_capacity(g: &MetricMeasureGraph, field: &RieszField, v: VertexId) -> f64 {
    let h = g.local_scale(v);
    if h > 0.0 {
        field.riesz_measure(v) / h
    } else {
        0.0
    }
}

fn poles_touch(g: &MetricMeasureGraph, x: VertexId, y: VertexId) -> bool {
    let hx = g.hop_distances(x);
    let hy = g.hop_distances(y);
    g.vertices().any(|v| hx[v.0] <= 1 && hy[v.0] <= 1)
}

fn witness_from_mask(
    g: &MetricMeasureGraph,
    field: &RieszField,
    mask: Vec<bool>,
) -> Result<CutWitness> {
    let (x, y) = field.poles();
    let ss = validate_mask(g, mask, x, y, 1)?;
    let boundary = ss.inner_boundary().to_vec();
    Ok(CutWitness {
        value: boundary_vertex_energy(g, &boundary, field.riesz_measures()),
        boundary,
        omega: ss.members().to_vec(),
    })
}

/// Minimum over separating sets of the boundary-vertex Riesz energy, for an
/// already computed field.
pub fn min_cut_energy_for(g: &MetricMeasureGraph, field: &RieszField) -> Result<CutWitness> {
    let (x, y) = field.poles();
    if poles_touch(g, x, y) {
        return Err(Error::NoValidSeparator);
    }
    let hy = g.hop_distances(y);
    let n = g.len();
    let mut net = FlowNetwork::new(2 * n);
    for v in g.vertices() {
        let cap = if v == x || hy[v.0] <= 1 {
            f64::INFINITY
        } else {
            vertex_capacity(g, field, v)
        };
        net.add_arc(2 * v.0, 2 * v.0 + 1, cap);
        for nb in g.neighbors(v) {
            net.add_arc(2 * v.0 + 1, 2 * nb.to.0, f64::INFINITY);
        }
    }
    let flow = net.max_flow(2 * x.0, 2 * y.0);
    debug_assert!(flow.is_finite());
    let reach = net.reaching(2 * y.0);
    let mask: Vec<bool> = g.vertices().map(|v| !reach[2 * v.0]).collect();
    witness_from_mask(g, field, mask)
}

/// Minimum over all separating sets from `x` to `y` of
/// `sum_{v ∈ ∂Ω} m^L(v) / h(v)`.
pub fn min_cut_energy(g: &MetricMeasureGraph, x: VertexId, y: VertexId, l: f64) -> Result<CutWitness> {
    let field = riesz_potential(g, x, y, l)?;
    min_cut_energy_for(g, &field)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Modulus {
    pub value: f64,
    pub witness: CutWitness,
}

/// Membership masks of the curve family: `region` for interior vertices and
/// the terminal set `N[y]`.
fn family_sets(g: &MetricMeasureGraph, y: VertexId) -> Vec<bool> {
    g.hop_distances(y).iter().map(|&h| h <= 1).collect()
}

/// 1-modulus of the paths that start at `x`, stay in `region` and end on
/// their first visit to the closed neighbourhood of `y`, with density cost
/// `m^L(v)/h(v)` on every vertex other than `x` and the terminals.
///
/// `region` defaults to the truncation ball. By duality the value is the
/// minimum vertex cut of the region-induced network.
pub fn modulus_connecting(
    g: &MetricMeasureGraph,
    field: &RieszField,
    region: Option<&[bool]>,
) -> Result<Modulus> {
    let (x, y) = field.poles();
    let region = region.unwrap_or(field.ball_mask());
    if region.len() != g.len() {
        return Err(Error::LengthMismatch { expected: g.len(), got: region.len() });
    }
    if !region[x.0] {
        return Err(Error::NotConnectedInRegion);
    }
    if poles_touch(g, x, y) {
        return Err(Error::NoValidSeparator);
    }
    let terminal = family_sets(g, y);
    let ones = vec![1.0; g.len()];
    if min_family_length(g, x, y, region, &ones).is_infinite() {
        return Err(Error::NotConnectedInRegion);
    }

    let n = g.len();
    let sink = 2 * n;
    let mut net = FlowNetwork::new(2 * n + 1);
    let interior = |v: VertexId| region[v.0] && !terminal[v.0];
    for v in g.vertices() {
        if terminal[v.0] {
            net.add_arc(2 * v.0, sink, f64::INFINITY);
            continue;
        }
        if !interior(v) {
            continue;
        }
        let cap = if v == x { f64::INFINITY } else { vertex_capacity(g, field, v) };
        net.add_arc(2 * v.0, 2 * v.0 + 1, cap);
        for nb in g.neighbors(v) {
            if region[nb.to.0] || terminal[nb.to.0] {
                net.add_arc(2 * v.0 + 1, 2 * nb.to.0, f64::INFINITY);
            }
        }
    }
    let value = net.max_flow(2 * x.0, sink);
    let reach = net.reaching(sink);

    // Cut vertices, plus everything outside the family's vertex set, are
    // removed; whatever can no longer reach the terminals forms the witness.
    let removed: Vec<bool> = g
        .vertices()
        .map(|v| {
            !terminal[v.0] && (!interior(v) || (!reach[2 * v.0] && reach[2 * v.0 + 1]))
        })
        .collect();
    let mut reaches_terminal = terminal.clone();
    let mut stack: Vec<VertexId> = g.vertices().filter(|v| terminal[v.0]).collect();
    while let Some(u) = stack.pop() {
        for nb in g.neighbors(u) {
            let w = nb.to;
            if !reaches_terminal[w.0] && !removed[w.0] {
                reaches_terminal[w.0] = true;
                stack.push(w);
            }
        }
    }
    let mask: Vec<bool> = reaches_terminal.iter().map(|&b| !b).collect();
    let witness = witness_from_mask(g, field, mask)?;
    Ok(Modulus { value, witness })
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Smallest `sum rho(v) h(v)` over the paths of the connecting family, with
/// the sum running over charged vertices. A density is admissible for the
/// family when this is at least 1. Returns `+inf` when the family is empty.
pub fn min_family_length(
    g: &MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    region: &[bool],
    rho: &[f64],
) -> f64 {
    let terminal = family_sets(g, y);
    if terminal[x.0] {
        return 0.0;
    }
    let mut dist = vec![f64::INFINITY; g.len()];
    dist[x.0] = 0.0;
    let mut heap = BinaryHeap::from([Item(0.0, x.0)]);
    while let Some(Item(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if terminal[u] {
            return d;
        }
        for nb in g.neighbors(VertexId(u)) {
            let w = nb.to;
            let step = if terminal[w.0] {
                0.0
            } else if region[w.0] {
                rho[w.0] * g.local_scale(w)
            } else {
                continue;
            };
            if d + step < dist[w.0] {
                dist[w.0] = d + step;
                heap.push(Item(d + step, w.0));
            }
        }
    }
    f64::INFINITY
}

/// Energy minimized by [`brute_force_cut_infimum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutEnergy {
    /// `sum_{v ∈ ∂Ω} m^L(v) / h(v)`.
    BoundaryVertex,
    RieszPerimeter,
    Capacity,
    Minkowski,
}

fn prefer(candidate: &[bool], incumbent: &[bool]) -> bool {
    for (a, b) in candidate.iter().zip(incumbent) {
        if a != b {
            return *a;
        }
    }
    false
}

/// Exhaustive minimum of `kind` over every separating set (oracle for small
/// graphs). Ties go to the lexicographically largest membership vector.
pub fn brute_force_cut_infimum(
    g: &MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    l: f64,
    kind: CutEnergy,
) -> Result<CutWitness> {
    let field = riesz_potential(g, x, y, l)?;
    let w = field.riesz_measures();
    let mut best: Option<(f64, crate::separating::SeparatingSet)> = None;
    for ss in enumerate_separating_sets(g, x, y, DEFAULT_ENUMERATION_LIMIT)? {
        let value = match kind {
            CutEnergy::BoundaryVertex => boundary_vertex_energy(g, ss.inner_boundary(), w),
            CutEnergy::RieszPerimeter => perimeter(g, ss.boundary(), &field, PerimeterMode::Riesz),
            CutEnergy::Capacity => capacity(g, ss.mask(), w, 1)?,
            CutEnergy::Minkowski => {
                minkowski_content(g, ss.mask(), w, 1.0, &RadiusSchedule::FirstShell)?
            }
        };
        let better = match &best {
            None => true,
            Some((bv, bss)) => {
                let tol = 1e-12 * bv.abs().max(value.abs());
                value < bv - tol || ((value - bv).abs() <= tol && prefer(ss.mask(), bss.mask()))
            }
        };
        if better {
            best = Some((value, ss));
        }
    }
    let (value, ss) = best.ok_or(Error::NoValidSeparator)?;
    Ok(CutWitness {
        value,
        boundary: ss.inner_boundary().to_vec(),
        omega: ss.members().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::graph::fixtures::{grid, path5};

    fn ids(v: &[VertexId]) -> Vec<usize> {
        v.iter().map(|v| v.0).collect()
    }

    #[test]
    fn path5_min_cut() {
        let g = path5();
        let w = min_cut_energy(&g, VertexId(0), VertexId(4), 1.0).unwrap();
        assert_eq!(w.value, 2.0);
        // {v0,v1} and {v0,v1,v2} both cost 2; the larger one is returned
        assert_eq!(ids(&w.omega), [0, 1, 2]);
        assert_eq!(ids(&w.boundary), [2]);
    }

    #[test]
    fn path5_modulus() {
        let g = path5();
        let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).unwrap();
        let m = modulus_connecting(&g, &f, None).unwrap();
        assert_eq!(m.value, 2.0);
        assert_eq!(m.witness.value, 2.0);
        assert_eq!(ids(&m.witness.omega), [0, 1, 2]);

        // rho = 1_{v2} / h(v2) is admissible with mass 2
        let mut rho = vec![0.0; 5];
        rho[2] = 1.0;
        assert_eq!(min_family_length(&g, VertexId(0), VertexId(4), f.ball_mask(), &rho), 1.0);

        let mut region = vec![true; 5];
        region[2] = false;
        assert_eq!(
            modulus_connecting(&g, &f, Some(&region)).unwrap_err(),
            Error::NotConnectedInRegion
        );
    }

    #[test]
    fn brute_force_kinds_on_path5() {
        let g = path5();
        let (x, y) = (VertexId(0), VertexId(4));
        let bv = brute_force_cut_infimum(&g, x, y, 1.0, CutEnergy::BoundaryVertex).unwrap();
        assert_eq!((bv.value, ids(&bv.omega)), (2.0, vec![0, 1, 2]));
        let per = brute_force_cut_infimum(&g, x, y, 1.0, CutEnergy::RieszPerimeter).unwrap();
        assert_eq!((per.value, ids(&per.omega)), (2.0, vec![0, 1, 2]));
        let cap = brute_force_cut_infimum(&g, x, y, 1.0, CutEnergy::Capacity).unwrap();
        assert_eq!(cap.value, 2.0);
        let mink = brute_force_cut_infimum(&g, x, y, 1.0, CutEnergy::Minkowski).unwrap();
        assert_eq!(mink.value, 2.0);
    }

    #[test]
    fn adjacent_poles_have_no_separator() {
        let tri = build_graph(
            &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
            &[("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)],
        )
        .unwrap();
        let (x, y) = (VertexId(0), VertexId(1));
        assert_eq!(min_cut_energy(&tri, x, y, 1.0).unwrap_err(), Error::NoValidSeparator);
        assert_eq!(
            brute_force_cut_infimum(&tri, x, y, 1.0, CutEnergy::BoundaryVertex).unwrap_err(),
            Error::NoValidSeparator
        );
        let f = riesz_potential(&tri, x, y, 1.0).unwrap();
        assert_eq!(modulus_connecting(&tri, &f, None).unwrap_err(), Error::NoValidSeparator);
    }

    #[test]
    fn grid3_matches_enumeration() {
        let g = grid(3);
        let (x, y) = (VertexId(0), VertexId(8));
        let mc = min_cut_energy(&g, x, y, 2.0).unwrap();
        let bf = brute_force_cut_infimum(&g, x, y, 2.0, CutEnergy::BoundaryVertex).unwrap();
        assert!((mc.value - bf.value).abs() <= 1e-12 * bf.value);
        assert_eq!(mc.omega, bf.omega);
        let f = riesz_potential(&g, x, y, 2.0).unwrap();
        let m = modulus_connecting(&g, &f, None).unwrap();
        assert!((m.value - mc.value).abs() <= 1e-12 * mc.value);
    }

    #[test]
    fn too_large_for_brute_force() {
        let g = grid(5);
        assert!(matches!(
            brute_force_cut_infimum(&g, VertexId(0), VertexId(24), 2.0, CutEnergy::Capacity),
            Err(Error::TooLarge { .. })
        ));
    }
}
