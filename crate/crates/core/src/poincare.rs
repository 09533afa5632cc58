//! Function-side checks: pointwise and local Poincaré ratios, discrete
//! coarea inequalities, and the scan relating them to cut energies.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::energies::cut::min_cut_energy_for;
use crate::energies::{codim_hausdorff, edge_perimeter, minkowski_content, Gauge, RadiusSchedule};
use crate::error::{Error, Result};
use crate::graph::{shortest_paths, MetricMeasureGraph, VertexId};
use crate::riesz::{riesz_potential, RieszField};
use crate::separating::SetBoundary;

/// Vertex function with its discrete local Lipschitz constant
/// `lip u(v) = max_{w ~ v} |u(v) - u(w)| / len(v, w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    label: String,
    values: Vec<f64>,
    lip: Vec<f64>,
}

impl TestFunction {
    pub fn new(g: &MetricMeasureGraph, label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != g.len() {
            return Err(Error::LengthMismatch { expected: g.len(), got: values.len() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadParam("test function values must be finite".into()));
        }
        let lip = g
            .vertices()
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .map(|nb| (values[v.0] - values[nb.to.0]).abs() / nb.len)
                    .fold(0.0, f64::max)
            })
            .collect();
        Ok(TestFunction { label: label.into(), values, lip })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, v: VertexId) -> f64 {
        self.values[v.0]
    }

    pub fn lip(&self) -> &[f64] {
        &self.lip
    }

    /// `a u + b`.
    pub fn affine(&self, g: &MetricMeasureGraph, a: f64, b: f64) -> Result<Self> {
        let values = self.values.iter().map(|&u| a * u + b).collect();
        TestFunction::new(g, format!("{}*{a}+{b}", self.label), values)
    }

    fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// `|u(x) - u(y)| / sum_v lip u(v) m^L(v)`; 0 for a zero numerator and
/// `+inf` for a zero denominator with nonzero numerator.
pub fn ptpi_ratio(u: &TestFunction, field: &RieszField) -> f64 {
    let (x, y) = field.poles();
    let num = (u.value(x) - u.value(y)).abs();
    if num == 0.0 {
        return 0.0;
    }
    let den: f64 = u.lip.iter().zip(field.riesz_measures()).map(|(l, m)| l * m).sum();
    if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

/// [`ptpi_ratio`] computing the field for `(x, y, L)`.
pub fn ptpi_ratio_at(
    g: &MetricMeasureGraph,
    u: &TestFunction,
    x: VertexId,
    y: VertexId,
    l: f64,
) -> Result<f64> {
    Ok(ptpi_ratio(u, &riesz_potential(g, x, y, l)?))
}

/// Mean oscillation of `u` on `B_r(center)` divided by
/// `r` times the mean of `lip u` on `B_{lambda r}(center)`.
pub fn local_poincare_check(
    g: &MetricMeasureGraph,
    center: VertexId,
    r: f64,
    lambda: f64,
    u: &TestFunction,
) -> Result<f64> {
    if !(r > 0.0 && lambda > 0.0) {
        return Err(Error::BadParam(format!("need r > 0 and lambda > 0, got {r}, {lambda}")));
    }
    let field = shortest_paths(g, center)?;
    let ball = |radius: f64| -> Result<(Vec<VertexId>, f64)> {
        let k = field.count_open(radius);
        let members = field.order()[..k].to_vec();
        let mass = field.ball_measure(radius);
        if mass <= 0.0 {
            return Err(Error::EmptyBall(g.label(center).into()));
        }
        Ok((members, mass))
    };
    let (inner, mass) = ball(r)?;
    let mean = inner.iter().map(|&v| u.value(v) * g.measure(v)).sum::<f64>() / mass;
    let osc = inner
        .iter()
        .map(|&v| (u.value(v) - mean).abs() * g.measure(v))
        .sum::<f64>()
        / mass;
    let (outer, outer_mass) = ball(lambda * r)?;
    let lip_mean = outer.iter().map(|&v| u.lip[v.0] * g.measure(v)).sum::<f64>() / outer_mass;
    let den = r * lip_mean;
    Ok(if osc == 0.0 {
        0.0
    } else if den > 0.0 {
        osc / den
    } else {
        f64::INFINITY
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoareaKind {
    /// Edge perimeter of the superlevel sets.
    Bv,
    /// Codimension-1 Hausdorff content of their vertex boundaries.
    CodH1,
    /// First-shell Minkowski content.
    Minkowski,
}

impl CoareaKind {
    /// Constant of the continuous inequality.
    pub fn constant(self) -> f64 {
        match self {
            CoareaKind::Bv | CoareaKind::Minkowski => 1.0,
            CoareaKind::CodH1 => 4.0,
        }
    }
}

/// Extra factor for the passage from edges to vertices.
pub const DISCRETIZATION_SLACK: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoareaResult {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Level-set integral of the chosen energy against `sum lip u * w`.
///
/// With `t_1 < ... < t_k` the values of `u`, the left side is
/// `sum_{j >= 2} E({u >= t_j}) (t_j - t_{j-1})`.
pub fn coarea_check(
    g: &MetricMeasureGraph,
    u: &TestFunction,
    weights: &[f64],
    kind: CoareaKind,
) -> Result<CoareaResult> {
    if weights.len() != g.len() {
        return Err(Error::LengthMismatch { expected: g.len(), got: weights.len() });
    }
    if u.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let mut levels = u.values.clone();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut lhs = 0.0;
    for j in 1..levels.len() {
        let t = levels[j];
        let mask: Vec<bool> = u.values.iter().map(|&v| v >= t).collect();
        let energy = match kind {
            CoareaKind::Bv => edge_perimeter(g, &SetBoundary::of(g, &mask), weights),
            CoareaKind::CodH1 => {
                let edge = SetBoundary::of(g, &mask).vertices();
                let delta = edge.iter().map(|&v| g.local_scale(v)).fold(0.0, f64::max);
                codim_hausdorff(g, &g.mask(&edge), delta, 1.0, Gauge::Measure(weights))?.best()
            }
            CoareaKind::Minkowski => {
                minkowski_content(g, &mask, weights, 1.0, &RadiusSchedule::FirstShell)?
            }
        };
        lhs += energy * (t - levels[j - 1]);
    }
    let rhs: f64 = u.lip.iter().zip(weights).map(|(l, w)| l * w).sum();
    let slack = kind.constant() * DISCRETIZATION_SLACK;
    Ok(CoareaResult { lhs, rhs, slack, pass: lhs <= slack * rhs * (1.0 + 1e-12) })
}

/// Deterministic suite: distance functions from sampled vertices, the same
/// truncated at half their range, and random vertex values smoothed by
/// three neighbourhood-averaging sweeps, in rotation.
pub fn default_suite(g: &MetricMeasureGraph, count: usize, seed: u64) -> Result<Vec<TestFunction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let z = VertexId(rng.gen_range(0..g.len()));
        let f = match i % 3 {
            0 => {
                let d = shortest_paths(g, z)?;
                TestFunction::new(g, format!("dist({})", g.label(z)), d.distances().to_vec())?
            }
            1 => {
                let d = shortest_paths(g, z)?;
                let cap = 0.5 * d.eccentricity();
                let values = d.distances().iter().map(|&v| v.min(cap)).collect();
                TestFunction::new(g, format!("min(dist({}),{cap})", g.label(z)), values)?
            }
            _ => {
                let mut values: Vec<f64> = (0..g.len()).map(|_| rng.gen::<f64>()).collect();
                for _ in 0..3 {
                    values = g
                        .vertices()
                        .map(|v| {
                            let nb = g.neighbors(v);
                            let sum: f64 = nb.iter().map(|n| values[n.to.0]).sum::<f64>() + values[v.0];
                            sum / (nb.len() + 1) as f64
                        })
                        .collect();
                }
                TestFunction::new(g, format!("smooth#{i}"), values)?
            }
        };
        out.push(f);
    }
    Ok(out)
}

/// `count` distinct pole pairs whose one-hop balls are disjoint, sampled
/// uniformly with a seeded generator.
pub fn sample_pole_pairs(
    g: &MetricMeasureGraph,
    count: usize,
    seed: u64,
) -> Vec<(VertexId, VertexId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(VertexId, VertexId)> = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < 100 * count.max(1) && g.len() >= 2 {
        attempts += 1;
        let x = VertexId(rng.gen_range(0..g.len()));
        let y = VertexId(rng.gen_range(0..g.len()));
        if x == y || out.contains(&(x, y)) || out.contains(&(y, x)) {
            continue;
        }
        let hx = g.hop_distances(x);
        if hx[y.0] <= 2 {
            continue;
        }
        out.push((x, y));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairResult {
    pub x: VertexId,
    pub y: VertexId,
    pub c_cut: f64,
    pub c_fn: f64,
    /// Label of the function attaining `c_fn`.
    pub worst: String,
    pub pass: bool,
}

impl PairResult {
    pub fn bound(&self) -> f64 {
        2.0 / self.c_cut
    }
}

/// Cut constant and worst suite ratio for one pair.
pub fn scan_pair(
    g: &MetricMeasureGraph,
    x: VertexId,
    y: VertexId,
    l: f64,
    suite: &[TestFunction],
) -> Result<PairResult> {
    let field = riesz_potential(g, x, y, l)?;
    let c_cut = min_cut_energy_for(g, &field)?.value;
    let mut c_fn = 0.0;
    let mut worst = String::new();
    for u in suite {
        let r = ptpi_ratio(u, &field);
        if r > c_fn || worst.is_empty() {
            c_fn = r;
            worst = u.label().into();
        }
    }
    let pass = c_fn <= 2.0 / c_cut * (1.0 + 1e-12);
    Ok(PairResult { x, y, c_cut, c_fn, worst, pass })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub pairs: Vec<PairResult>,
    pub min_c_cut: f64,
    pub max_c_fn: f64,
}

impl ScanReport {
    pub fn from_pairs(pairs: Vec<PairResult>) -> Self {
        let min_c_cut = pairs.iter().map(|p| p.c_cut).fold(f64::INFINITY, f64::min);
        let max_c_fn = pairs.iter().map(|p| p.c_fn).fold(0.0, f64::max);
        ScanReport { pairs, min_c_cut, max_c_fn }
    }

    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.pass)
    }
}

pub fn pi_scan(
    g: &MetricMeasureGraph,
    pairs: &[(VertexId, VertexId)],
    l: f64,
    suite: &[TestFunction],
) -> Result<ScanReport> {
    if pairs.is_empty() {
        return Err(Error::BadParam("no pole pairs".into()));
    }
    if suite.is_empty() {
        return Err(Error::BadParam("empty function suite".into()));
    }
    let results = pairs
        .iter()
        .map(|&(x, y)| scan_pair(g, x, y, l, suite))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::from_pairs(results))
}

/// Function `i` on `v_i`-style graphs; index-valued.
pub fn index_function(g: &MetricMeasureGraph) -> Result<TestFunction> {
    TestFunction::new(g, "index", (0..g.len()).map(|i| i as f64).collect())
}

/// Indicator of a vertex set.
pub fn indicator(g: &MetricMeasureGraph, set: &[VertexId]) -> Result<TestFunction> {
    let mut values = vec![0.0; g.len()];
    for v in set {
        values[g.check(*v)?.0] = 1.0;
    }
    TestFunction::new(g, "indicator", values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{grid, path5};

    #[test]
    fn ptpi_on_path5() {
        let g = path5();
        let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).unwrap();
        let u = index_function(&g).unwrap();
        assert!(u.lip().iter().all(|&l| l == 1.0));
        // 4 / (2 + 2 + 2)
        assert_eq!(ptpi_ratio(&u, &f), 4.0 / 6.0);
        let ind = indicator(&g, &[VertexId(0)]).unwrap();
        // lip = 1 on v0, v1 and m^L(v0) = 0
        assert_eq!(ptpi_ratio(&ind, &f), 0.5);
        let c = TestFunction::new(&g, "c", vec![3.0; 5]).unwrap();
        assert_eq!(ptpi_ratio(&c, &f), 0.0);
        let v = ptpi_ratio(&u.affine(&g, -2.5, 7.0).unwrap(), &f);
        assert!((v - 4.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn local_poincare_on_path5() {
        let g = path5();
        let u = index_function(&g).unwrap();
        let v = local_poincare_check(&g, VertexId(2), 1.5, 1.0, &u).unwrap();
        assert!((v - 4.0 / 9.0).abs() < 1e-15);
        let c = TestFunction::new(&g, "c", vec![1.0; 5]).unwrap();
        assert_eq!(local_poincare_check(&g, VertexId(2), 1.5, 1.0, &c).unwrap(), 0.0);
    }

    #[test]
    fn coarea_on_path5() {
        let g = path5();
        let u = index_function(&g).unwrap();
        let bv = coarea_check(&g, &u, g.measures(), CoareaKind::Bv).unwrap();
        assert_eq!((bv.lhs, bv.rhs), (4.0, 5.0));
        assert!(bv.pass);
        let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).unwrap();
        let mk = coarea_check(&g, &u, f.riesz_measures(), CoareaKind::Minkowski).unwrap();
        // annuli {v0},{v1},{v2},{v3} carry 0 + 2 + 2 + 2
        assert_eq!((mk.lhs, mk.rhs), (6.0, 6.0));
        assert!(mk.pass);
        let c = TestFunction::new(&g, "c", vec![1.0; 5]).unwrap();
        assert_eq!(
            coarea_check(&g, &c, g.measures(), CoareaKind::Bv).unwrap_err(),
            Error::ConstantFunction
        );
    }

    #[test]
    fn scan_on_path5() {
        let g = path5();
        let suite = [index_function(&g).unwrap()];
        let r = pi_scan(&g, &[(VertexId(0), VertexId(4))], 1.0, &suite).unwrap();
        assert_eq!(r.pairs[0].c_cut, 2.0);
        assert_eq!(r.pairs[0].c_fn, 4.0 / 6.0);
        assert!(r.all_pass());
        assert_eq!(pi_scan(&g, &[], 1.0, &suite).unwrap_err(), Error::BadParam("no pole pairs".into()));
    }

    #[test]
    fn suite_is_deterministic() {
        let g = grid(6);
        let a = default_suite(&g, 9, 7).unwrap();
        let b = default_suite(&g, 9, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, default_suite(&g, 9, 8).unwrap());
        let pairs = sample_pole_pairs(&g, 5, 1);
        assert_eq!(pairs.len(), 5);
        assert_eq!(pairs, sample_pole_pairs(&g, 5, 1));
    }
}
