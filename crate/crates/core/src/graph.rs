//! The discrete metric measure space: a connected weighted graph with
//! nonnegative vertex measures and positive edge lengths, metrized by
//! shortest paths.
//!
//! Balls are open (`{d < r}`) unless a function name says otherwise.
//! Distances produced by summing floating point lengths are compared with a
//! small relative tolerance so that a vertex sitting exactly on a sphere is
//! not flipped in or out by rounding.

use alloc::collections::{BTreeMap, BinaryHeap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Relative tolerance used when comparing a distance against a radius.
pub const DIST_REL_TOL: f64 = 1e-10;

/// `d < r`, robust to rounding: values within the tolerance count as equal.
#[inline]
pub fn dist_lt(d: f64, r: f64) -> bool {
    d < r - DIST_REL_TOL * r.abs()
}

/// `d <= r`, robust to rounding.
#[inline]
pub fn dist_le(d: f64, r: f64) -> bool {
    d <= r + DIST_REL_TOL * r.abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub to: VertexId,
    pub len: f64,
}

/// Incremental construction of a [`MetricMeasureGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    measure: Vec<f64>,
    edges: Vec<(usize, usize, f64)>,
    error: Option<Error>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, measure: f64) -> VertexId {
        let label = label.into();
        let id = self.labels.len();
        if self.error.is_none() {
            if self.index.contains_key(&label) {
                self.error = Some(Error::DuplicateVertex(label.clone()));
            } else if !(measure.is_finite() && measure >= 0.0) {
                self.error = Some(Error::NegativeMeasure(label.clone(), measure));
            }
        }
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.measure.push(measure);
        VertexId(id)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, len: f64) {
        self.edges.push((u.0, v.0, len));
    }

    /// Adds an edge between two labelled vertices.
    pub fn add_edge_by_label(&mut self, u: &str, v: &str, len: f64) {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&a), Some(&b)) => self.edges.push((a, b, len)),
            (None, _) => self.fail(Error::UnknownVertex(u.to_string())),
            (_, None) => self.fail(Error::UnknownVertex(v.to_string())),
        }
    }

    fn fail(&mut self, e: Error) {
        if self.error.is_none() {
            self.error = Some(e);
        }
    }

    pub fn build(self) -> Result<MetricMeasureGraph> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let n = self.labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let total: f64 = self.measure.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroTotalMeasure);
        }
        let mut adj: Vec<Vec<Neighbor>> = vec![Vec::new(); n];
        let mut seen = BTreeMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(u, v, len) in &self.edges {
            if u >= n {
                return Err(Error::UnknownVertex(u.to_string()));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            if u == v {
                return Err(Error::SelfLoop(self.labels[u].clone()));
            }
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::NonpositiveLength(
                    self.labels[u].clone(),
                    self.labels[v].clone(),
                    len,
                ));
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key, ()).is_some() {
                return Err(Error::DuplicateEdge(
                    self.labels[key.0].clone(),
                    self.labels[key.1].clone(),
                ));
            }
            adj[u].push(Neighbor { to: VertexId(v), len });
            adj[v].push(Neighbor { to: VertexId(u), len });
            edges.push((VertexId(key.0), VertexId(key.1), len));
        }
        for list in &mut adj {
            list.sort_by_key(|nb| nb.to);
        }
        edges.sort_by_key(|&(a, b, _)| (a, b));

        let components = count_components(&adj);
        if components != 1 {
            return Err(Error::DisconnectedGraph { components });
        }

        let scale = adj
            .iter()
            .map(|list| {
                let sum: f64 = list.iter().map(|nb| nb.len).sum();
                let max = list.iter().map(|nb| nb.len).fold(0.0, f64::max);
                (0.5 * sum).min(max)
            })
            .collect();

        Ok(MetricMeasureGraph {
            labels: self.labels,
            index: self.index,
            measure: self.measure,
            adj,
            edges,
            scale,
            total_measure: total,
        })
    }
}

fn count_components(adj: &[Vec<Neighbor>]) -> usize {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for nb in &adj[u] {
                if !seen[nb.to.0] {
                    seen[nb.to.0] = true;
                    queue.push_back(nb.to.0);
                }
            }
        }
    }
    components
}

/// Builds a graph from labelled vertices `(id, measure)` and edges `(u, v, length)`.
pub fn build_graph<S: AsRef<str>>(
    vertices: &[(S, f64)],
    edges: &[(S, S, f64)],
) -> Result<MetricMeasureGraph> {
    let mut b = GraphBuilder::new();
    for (label, m) in vertices {
        b.add_vertex(label.as_ref(), *m);
    }
    for (u, v, len) in edges {
        b.add_edge_by_label(u.as_ref(), v.as_ref(), *len);
    }
    b.build()
}

/// A finite connected graph carrying vertex measures and edge lengths.
///
/// Immutable once built; every query is a pure function of `&self`.
#[derive(Debug, Clone)]
pub struct MetricMeasureGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    measure: Vec<f64>,
    adj: Vec<Vec<Neighbor>>,
    edges: Vec<(VertexId, VertexId, f64)>,
    scale: Vec<f64>,
    total_measure: f64,
}

impl MetricMeasureGraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).map(VertexId)
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .map(|&i| VertexId(i))
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn check(&self, v: VertexId) -> Result<VertexId> {
        if v.0 < self.len() {
            Ok(v)
        } else {
            Err(Error::UnknownVertex(v.0.to_string()))
        }
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn measure(&self, v: VertexId) -> f64 {
        self.measure[v.0]
    }

    pub fn measures(&self) -> &[f64] {
        &self.measure
    }

    pub fn total_measure(&self) -> f64 {
        self.total_measure
    }

    pub fn neighbors(&self, v: VertexId) -> &[Neighbor] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    /// Undirected edges `(u, v, len)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId, f64)] {
        &self.edges
    }

    pub fn edge_len(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.adj[u.0]
            .binary_search_by_key(&v, |nb| nb.to)
            .ok()
            .map(|i| self.adj[u.0][i].len)
    }

    /// Local scale `h(v)`: half the total incident length, capped at the
    /// longest incident edge. Zero only for an isolated vertex.
    pub fn local_scale(&self, v: VertexId) -> f64 {
        self.scale[v.0]
    }

    pub fn local_scales(&self) -> &[f64] {
        &self.scale
    }

    /// Smallest positive local scale.
    pub fn min_local_scale(&self) -> f64 {
        self.scale
            .iter()
            .copied()
            .filter(|&h| h > 0.0)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn min_edge_len(&self) -> f64 {
        self.edges.iter().map(|e| e.2).fold(f64::INFINITY, f64::min)
    }

    /// Same graph with every measure multiplied by `factor`.
    pub fn scaled_measure(&self, factor: f64) -> Result<Self> {
        self.with_measures(self.measure.iter().map(|m| m * factor).collect())
    }

    /// Same topology and lengths with replaced vertex measures.
    pub fn with_measures(&self, measure: Vec<f64>) -> Result<Self> {
        if measure.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: measure.len(),
            });
        }
        for (i, &m) in measure.iter().enumerate() {
            if !(m.is_finite() && m >= 0.0) {
                return Err(Error::NegativeMeasure(self.labels[i].clone(), m));
            }
        }
        let total: f64 = measure.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroTotalMeasure);
        }
        let mut g = self.clone();
        g.measure = measure;
        g.total_measure = total;
        Ok(g)
    }

    /// Set of vertices as a membership mask.
    pub fn mask(&self, set: &[VertexId]) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        for v in set {
            mask[v.0] = true;
        }
        mask
    }

    /// Hop counts from `x` (breadth-first).
    pub fn hop_distances(&self, x: VertexId) -> Vec<usize> {
        let mut hops = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::new();
        hops[x.0] = 0;
        queue.push_back(x);
        while let Some(u) = queue.pop_front() {
            for nb in &self.adj[u.0] {
                if hops[nb.to.0] == usize::MAX {
                    hops[nb.to.0] = hops[u.0] + 1;
                    queue.push_back(nb.to);
                }
            }
        }
        hops
    }

    /// Vertices within `hops` graph steps of `set` (including `set`).
    pub fn hop_neighborhood(&self, set: &[bool], hops: usize) -> Vec<bool> {
        let mut inside = set.to_vec();
        let mut frontier: Vec<VertexId> = self.vertices().filter(|v| set[v.0]).collect();
        for _ in 0..hops {
            let mut next = Vec::new();
            for u in frontier {
                for nb in &self.adj[u.0] {
                    if !inside[nb.to.0] {
                        inside[nb.to.0] = true;
                        next.push(nb.to);
                    }
                }
            }
            frontier = next;
        }
        inside
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapItem {
    dist: f64,
    v: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    // min-heap on (dist, vertex id)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from a set of sources, optionally stopping beyond `cutoff`
/// (closed). Unreached vertices keep `f64::INFINITY`.
fn dijkstra(g: &MetricMeasureGraph, sources: &[VertexId], cutoff: f64) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.len()];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s.0] = 0.0;
        heap.push(HeapItem { dist: 0.0, v: s.0 });
    }
    while let Some(HeapItem { dist: d, v }) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for nb in &g.adj[v] {
            let nd = d + nb.len;
            if nd < dist[nb.to.0] && dist_le(nd, cutoff) {
                dist[nb.to.0] = nd;
                heap.push(HeapItem { dist: nd, v: nb.to.0 });
            }
        }
    }
    dist
}

/// Distances from `d(x, .)` together with the sorted order needed to answer
/// ball-measure queries by binary search.
#[derive(Debug, Clone)]
pub struct DistanceField {
    source: VertexId,
    dist: Vec<f64>,
    order: Vec<VertexId>,
    prefix: Vec<f64>,
}

impl DistanceField {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn dist(&self, v: VertexId) -> f64 {
        self.dist[v.0]
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    /// Vertices sorted by `(distance, id)`.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// `prefix()[k]` is the measure of the first `k` vertices of [`order`](Self::order).
    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    /// Number of vertices with `d < r`.
    pub fn count_open(&self, r: f64) -> usize {
        self.order.partition_point(|v| dist_lt(self.dist[v.0], r))
    }

    /// Number of vertices with `d <= r`.
    pub fn count_closed(&self, r: f64) -> usize {
        self.order.partition_point(|v| dist_le(self.dist[v.0], r))
    }

    /// `m(B_r(x))` for the open ball; zero for `r <= 0`.
    pub fn ball_measure(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        self.prefix[self.count_open(r)]
    }

    pub fn closed_ball_measure(&self, r: f64) -> f64 {
        if r < 0.0 {
            return 0.0;
        }
        self.prefix[self.count_closed(r)]
    }

    /// Largest distance from the source.
    pub fn eccentricity(&self) -> f64 {
        self.order.last().map(|v| self.dist[v.0]).unwrap_or(0.0)
    }
}

/// Exact single-source shortest-path distances; ties broken by vertex id.
pub fn shortest_paths(g: &MetricMeasureGraph, x: VertexId) -> Result<DistanceField> {
    g.check(x)?;
    let dist = dijkstra(g, &[x], f64::INFINITY);
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by(|a, b| dist[a.0].total_cmp(&dist[b.0]).then(a.cmp(b)));
    let mut prefix = Vec::with_capacity(order.len() + 1);
    let mut acc = 0.0;
    prefix.push(acc);
    for v in &order {
        acc += g.measure(*v);
        prefix.push(acc);
    }
    Ok(DistanceField {
        source: x,
        dist,
        order,
        prefix,
    })
}

/// `m(B_r(x))`, open ball.
pub fn ball_measure(g: &MetricMeasureGraph, x: VertexId, r: f64) -> Result<f64> {
    Ok(shortest_paths(g, x)?.ball_measure(r))
}

/// `d(., A)` for every vertex.
pub fn distances_to_set(g: &MetricMeasureGraph, set: &[bool]) -> Vec<f64> {
    let sources: Vec<VertexId> = g.vertices().filter(|v| set[v.0]).collect();
    dijkstra(g, &sources, f64::INFINITY)
}

/// Vertices with `d(z, v) <= radius`, with their distances, sorted by
/// `(distance, id)`. Only explores the ball.
pub fn closed_ball(g: &MetricMeasureGraph, z: VertexId, radius: f64) -> Vec<(VertexId, f64)> {
    let dist = dijkstra(g, &[z], radius);
    let mut out: Vec<(VertexId, f64)> = dist
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_finite())
        .map(|(i, &d)| (VertexId(i), d))
        .collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}

/// Largest eccentricity over all vertices (exact, `O(n)` Dijkstra runs).
pub fn diameter(g: &MetricMeasureGraph) -> f64 {
    g.vertices()
        .map(|v| dijkstra(g, &[v], f64::INFINITY).into_iter().fold(0.0, f64::max))
        .fold(0.0, f64::max)
}
