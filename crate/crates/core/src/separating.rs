//! Discrete separating sets.
//!
//! A vertex set `Ω` separates `x` from `y` when it contains the `k`-hop ball
//! of `x` and misses the `k`-hop ball of `y` (`k = 1` by default), so `x`
//! sits in the interior `{v ∈ Ω : all neighbours in Ω}` and `y` in the
//! interior of the complement.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{MetricMeasureGraph, VertexId};

/// Default interior depth, one graph hop.
pub const DEFAULT_INTERIOR_HOPS: usize = 1;

/// Default vertex limit for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 22;

/// Vertex and edge boundary of an arbitrary vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct SetBoundary {
    /// Members with a neighbour outside the set.
    pub inner: Vec<VertexId>,
    /// Non-members with a neighbour inside the set.
    pub outer: Vec<VertexId>,
    /// `(u, v)` with `u` inside and `v` outside, sorted.
    pub cut_edges: Vec<(VertexId, VertexId)>,
}

impl SetBoundary {
    pub fn of(g: &MetricMeasureGraph, mask: &[bool]) -> Self {
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        let mut cut_edges = Vec::new();
        for v in g.vertices() {
            let crosses = g.neighbors(v).iter().any(|nb| mask[nb.to.0] != mask[v.0]);
            if !crosses {
                continue;
            }
            if mask[v.0] {
                inner.push(v);
                for nb in g.neighbors(v) {
                    if !mask[nb.to.0] {
                        cut_edges.push((v, nb.to));
                    }
                }
            } else {
                outer.push(v);
            }
        }
        SetBoundary {
            inner,
            outer,
            cut_edges,
        }
    }

    /// `inner ∪ outer`, sorted.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut all: Vec<VertexId> = self.inner.iter().chain(&self.outer).copied().collect();
        all.sort();
        all
    }
}

/// A validated separating set from `x` to `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingSet {
    x: VertexId,
    y: VertexId,
    mask: Vec<bool>,
    members: Vec<VertexId>,
    boundary: SetBoundary,
}

impl SeparatingSet {
    pub fn poles(&self) -> (VertexId, VertexId) {
        (self.x, self.y)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.mask[v.0]
    }

    /// Members of `Ω`, sorted.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn inner_boundary(&self) -> &[VertexId] {
        &self.boundary.inner
    }

    pub fn outer_boundary(&self) -> &[VertexId] {
        &self.boundary.outer
    }

    pub fn cut_edges(&self) -> &[(VertexId, VertexId)] {
        &self.boundary.cut_edges
    }

    pub fn boundary(&self) -> &SetBoundary {
        &self.boundary
    }

    /// The complement, as a separating set from `y` to `x`.
    pub fn swapped(&self, g: &MetricMeasureGraph) -> SeparatingSet {
        let mask: Vec<bool> = self.mask.iter().map(|b| !b).collect();
        let members = g.vertices().filter(|v| mask[v.0]).collect();
        let boundary = SetBoundary::of(g, &mask);
        SeparatingSet {
            x: self.y,
            y: self.x,
            mask,
            members,
            boundary,
        }
    }
}

/// Checks that `mask` separates `x` from `y` with the given interior depth.
pub fn validate_mask(
    g: &MetricMeasureGraph,
    mask: Vec<bool>,
    x: VertexId,
    y: VertexId,
    interior_hops: usize,
) -> Result<SeparatingSet> {
    g.check(x)?;
    g.check(y)?;
    if x == y {
        return Err(Error::SamePoles);
    }
    if mask.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            got: mask.len(),
        });
    }
    if !mask[x.0] || mask[y.0] || mask.iter().all(|&b| b) {
        return Err(Error::NotSeparating);
    }
    let hx = g.hop_distances(x);
    let hy = g.hop_distances(y);
    for v in g.vertices() {
        if hx[v.0] <= interior_hops && !mask[v.0] {
            return Err(Error::PoleNotInterior(g.label(x).into()));
        }
        if hy[v.0] <= interior_hops && mask[v.0] {
            return Err(Error::PoleNotInterior(g.label(y).into()));
        }
    }
    let members = g.vertices().filter(|v| mask[v.0]).collect();
    let boundary = SetBoundary::of(g, &mask);
    Ok(SeparatingSet {
        x,
        y,
        mask,
        members,
        boundary,
    })
}

pub fn validate(
    g: &MetricMeasureGraph,
    omega: &[VertexId],
    x: VertexId,
    y: VertexId,
) -> Result<SeparatingSet> {
    for &v in omega {
        g.check(v)?;
    }
    validate_mask(g, g.mask(omega), x, y, DEFAULT_INTERIOR_HOPS)
}

/// The superlevel set `{u >= t}` as a separating set. Whichever pole lies
/// inside becomes `x` of the result.
pub fn sublevel_set(
    g: &MetricMeasureGraph,
    u: &[f64],
    t: f64,
    x: VertexId,
    y: VertexId,
) -> Result<SeparatingSet> {
    if u.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            got: u.len(),
        });
    }
    g.check(x)?;
    g.check(y)?;
    let mask: Vec<bool> = u.iter().map(|&val| val >= t).collect();
    let (inside, outside) = match (mask[x.0], mask[y.0]) {
        (true, false) => (x, y),
        (false, true) => (y, x),
        _ => return Err(Error::NotSeparating),
    };
    validate_mask(g, mask, inside, outside, DEFAULT_INTERIOR_HOPS).map_err(|e| match e {
        Error::PoleNotInterior(_) => Error::LevelTooClose,
        other => other,
    })
}

/// Vertices forced into and out of every separating set.
pub(crate) fn forced_sides(
    g: &MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    interior_hops: usize,
) -> (Vec<bool>, Vec<bool>) {
    let hx = g.hop_distances(x);
    let hy = g.hop_distances(y);
    let must_in = hx.iter().map(|&h| h <= interior_hops).collect();
    let must_out = hy.iter().map(|&h| h <= interior_hops).collect();
    (must_in, must_out)
}

/// Exhaustive iterator over every separating set from `x` to `y`.
#[derive(Debug)]
pub struct SeparatingSets<'g> {
    g: &'g MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    base: Vec<bool>,
    free: Vec<VertexId>,
    next: u64,
    end: u64,
}

impl Iterator for SeparatingSets<'_> {
    type Item = SeparatingSet;

    fn next(&mut self) -> Option<SeparatingSet> {
        while self.next < self.end {
            let bits = self.next;
            self.next += 1;
            let mut mask = self.base.clone();
            for (i, v) in self.free.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    mask[v.0] = true;
                }
            }
            if let Ok(ss) = validate_mask(self.g, mask, self.x, self.y, DEFAULT_INTERIOR_HOPS) {
                return Some(ss);
            }
        }
        None
    }
}

/// Yields every valid `Ω` exactly once. Fails if the graph has more than
/// `max_vertices` vertices.
pub fn enumerate_separating_sets(
    g: &MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    max_vertices: usize,
) -> Result<SeparatingSets<'_>> {
    g.check(x)?;
    g.check(y)?;
    if x == y {
        return Err(Error::SamePoles);
    }
    if g.len() > max_vertices || g.len() > 63 {
        return Err(Error::TooLarge {
            vertices: g.len(),
            limit: max_vertices.min(63),
        });
    }
    let (must_in, must_out) = forced_sides(g, x, y, DEFAULT_INTERIOR_HOPS);
    let clash = g.vertices().any(|v| must_in[v.0] && must_out[v.0]);
    let free: Vec<VertexId> = g
        .vertices()
        .filter(|v| !must_in[v.0] && !must_out[v.0])
        .collect();
    let end = if clash { 0 } else { 1u64 << free.len() };
    Ok(SeparatingSets {
        g,
        x,
        y,
        base: must_in,
        free,
        next: 0,
        end,
    })
}

/// True when `blocked` meets every path from `x` to `y`.
pub fn blocks(g: &MetricMeasureGraph, blocked: &[bool], x: VertexId, y: VertexId) -> bool {
    if blocked[x.0] || blocked[y.0] {
        return true;
    }
    let mut seen = vec![false; g.len()];
    let mut stack = vec![x];
    seen[x.0] = true;
    while let Some(u) = stack.pop() {
        if u == y {
            return false;
        }
        for nb in g.neighbors(u) {
            if !seen[nb.to.0] && !blocked[nb.to.0] {
                seen[nb.to.0] = true;
                stack.push(nb.to);
            }
        }
    }
    true
}
