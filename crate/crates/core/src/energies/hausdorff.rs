use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{closed_ball, dist_le, dist_lt, distances_to_set, MetricMeasureGraph, VertexId};

/// Exact search runs when `A` has at most this many vertices, or when at most
/// this many distinct candidate balls remain.
pub const EXACT_LIMIT: usize = 16;

/// Cost of a ball `B_r(z)` in a cover.
#[derive(Debug, Clone, Copy)]
pub enum Gauge<'a> {
    /// `w(B_r(z)) / r^p` for a vertex weight `w` (plain `m` or `m^L`).
    Measure(&'a [f64]),
    /// `R(z) m(B_r(z)) / r^p`; centres with a non-finite potential are skipped.
    Potential { potential: &'a [f64], measure: &'a [f64] },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HausdorffEstimate {
    /// Cost of the greedy cover, an upper bound.
    pub greedy: f64,
    /// Optimal cover cost when the instance is small enough.
    pub exact: Option<f64>,
}

impl HausdorffEstimate {
    pub fn best(&self) -> f64 {
        self.exact.unwrap_or(self.greedy)
    }
}

struct Ball {
    covers: Vec<usize>,
    cost: f64,
}

/// Discrete codimension-`p` Hausdorff content of `A` at scale `delta`:
/// the cheapest cover of `A` by open balls `B_r(z)` with `r <= delta`.
pub fn codim_hausdorff(
    g: &MetricMeasureGraph,
    set: &[bool],
    delta: f64,
    p: f64,
    gauge: Gauge<'_>,
) -> Result<HausdorffEstimate> {
    let members: Vec<VertexId> = g.vertices().filter(|v| set[v.0]).collect();
    if members.is_empty() {
        return Err(Error::EmptySet);
    }
    let min_scale = g.min_local_scale();
    if !(delta > 0.0) || (min_scale.is_finite() && dist_lt(delta, min_scale)) {
        return Err(Error::DeltaTooSmall { delta, min_scale });
    }
    let slot: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, v)| (v.0, i)).collect();
    let to_set = distances_to_set(g, set);

    // cheapest ball for each covered subset
    let mut best: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for z in g.vertices().filter(|z| dist_lt(to_set[z.0], delta)) {
        let center_factor = match gauge {
            Gauge::Measure(_) => 1.0,
            Gauge::Potential { potential, .. } => {
                if !potential[z.0].is_finite() {
                    continue;
                }
                potential[z.0]
            }
        };
        let ball = closed_ball(g, z, delta);
        let mut radii: Vec<f64> = ball.iter().map(|&(_, d)| d).filter(|&d| d > 0.0).collect();
        radii.push(delta);
        radii.dedup_by(|a, b| dist_le(*a, *b));
        for r in radii {
            let inside = ball.iter().filter(|&&(_, d)| dist_lt(d, r));
            let mut covers = Vec::new();
            let mut mass = 0.0;
            for &(v, _) in inside {
                mass += match gauge {
                    Gauge::Measure(w) => w[v.0],
                    Gauge::Potential { measure, .. } => measure[v.0],
                };
                if let Some(&i) = slot.get(&v.0) {
                    covers.push(i);
                }
            }
            if covers.is_empty() {
                continue;
            }
            covers.sort_unstable();
            let cost = center_factor * mass / libm::pow(r, p);
            let entry = best.entry(covers).or_insert(f64::INFINITY);
            if cost < *entry {
                *entry = cost;
            }
        }
    }
    let balls: Vec<Ball> = best.into_iter().map(|(covers, cost)| Ball { covers, cost }).collect();

    let greedy = greedy_cover(members.len(), &balls);
    let exact = if members.len() <= EXACT_LIMIT {
        Some(mask_dp(members.len(), &balls))
    } else if balls.len() <= EXACT_LIMIT {
        Some(subset_search(members.len(), &balls))
    } else {
        None
    };
    Ok(HausdorffEstimate { greedy, exact })
}

fn greedy_cover(n: usize, balls: &[Ball]) -> f64 {
    let mut covered = vec![false; n];
    let mut left = n;
    let mut total = 0.0;
    while left > 0 {
        let mut pick: Option<(usize, f64)> = None;
        for (i, b) in balls.iter().enumerate() {
            let fresh = b.covers.iter().filter(|&&j| !covered[j]).count();
            if fresh == 0 {
                continue;
            }
            let ratio = b.cost / fresh as f64;
            if pick.is_none_or(|(_, r)| ratio < r) {
                pick = Some((i, ratio));
            }
        }
        let (i, _) = pick.expect("every member lies in its own ball");
        total += balls[i].cost;
        for &j in &balls[i].covers {
            if !covered[j] {
                covered[j] = true;
                left -= 1;
            }
        }
    }
    total
}

fn mask_dp(n: usize, balls: &[Ball]) -> f64 {
    let full = (1usize << n) - 1;
    let masks: Vec<usize> = balls
        .iter()
        .map(|b| b.covers.iter().fold(0, |m, &j| m | 1 << j))
        .collect();
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &m) in masks.iter().enumerate() {
        for j in 0..n {
            if m >> j & 1 == 1 {
                by_first[j].push(i);
            }
        }
    }
    let mut dp = vec![f64::INFINITY; full + 1];
    dp[0] = 0.0;
    for m in 0..full {
        if !dp[m].is_finite() {
            continue;
        }
        let first = (!m).trailing_zeros() as usize;
        for &i in &by_first[first] {
            let next = m | masks[i];
            let cost = dp[m] + balls[i].cost;
            if cost < dp[next] {
                dp[next] = cost;
            }
        }
    }
    dp[full]
}

fn subset_search(n: usize, balls: &[Ball]) -> f64 {
    let mut best = f64::INFINITY;
    for bits in 0u32..(1 << balls.len()) {
        let mut covered = vec![false; n];
        let mut cost = 0.0;
        for (i, b) in balls.iter().enumerate() {
            if bits >> i & 1 == 1 {
                cost += b.cost;
                for &j in &b.covers {
                    covered[j] = true;
                }
            }
        }
        if cost < best && covered.iter().all(|&c| c) {
            best = cost;
        }
    }
    best
}
