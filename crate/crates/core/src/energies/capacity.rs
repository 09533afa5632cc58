use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::MetricMeasureGraph;

/// Variational capacity of `A` inside its `hops`-neighbourhood `U`:
/// the minimum over `u` with `u = 1` on `A` and `u = 0` off `U` of
/// `sum_v w(v) * max_{w ~ v} |u(v) - u(w)| / len(v, w)`.
///
/// The minimum is taken over indicator functions and solved as a
/// hypergraph cut: for each `v` with neighbours sorted by edge length
/// `l_1 <= ... <= l_d`, the hyperedge `{v} ∪ {w : len(v, w) <= l_k}` is cut
/// at cost `w(v) (1/l_k - 1/l_{k+1})`, which telescopes to the largest
/// `1/len` across the cut.
pub fn capacity(g: &MetricMeasureGraph, set: &[bool], weights: &[f64], hops: usize) -> Result<f64> {
    if !set.iter().any(|&b| b) {
        return Err(Error::EmptySet);
    }
    let hood = g.hop_neighborhood(set, hops);
    if hood.iter().all(|&b| b) {
        log::warn!("capacity: neighbourhood covers the whole space, reporting 0");
        return Ok(0.0);
    }
    let n = g.len();
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for v in g.vertices() {
        if set[v.0] {
            net.add_arc(s, v.0, f64::INFINITY);
        } else if !hood[v.0] {
            net.add_arc(v.0, t, f64::INFINITY);
        }
        let w = weights[v.0];
        if w <= 0.0 {
            continue;
        }
        let mut nbrs: Vec<_> = g.neighbors(v).to_vec();
        nbrs.sort_by(|a, b| a.len.total_cmp(&b.len));
        let mut k = 0;
        while k < nbrs.len() {
            let lk = nbrs[k].len;
            while k + 1 < nbrs.len() && nbrs[k + 1].len == lk {
                k += 1;
            }
            let next_inv = nbrs.get(k + 1).map_or(0.0, |nb| 1.0 / nb.len);
            let cost = w * (1.0 / lk - next_inv);
            let a = net.add_node();
            let b = net.add_node();
            net.add_arc(a, b, cost);
            for z in core::iter::once(v.0).chain(nbrs[..=k].iter().map(|nb| nb.to.0)) {
                net.add_arc(z, a, f64::INFINITY);
                net.add_arc(b, z, f64::INFINITY);
            }
            k += 1;
        }
    }
    Ok(net.max_flow(s, t))
}
