//! Generators for benchmark spaces and ingestion of point clouds.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, MetricMeasureGraph, VertexId};

fn bad(msg: String) -> Error {
    Error::BadParam(msg)
}

/// `v0 - v1 - ... - v{n-1}` with unit measures and lengths.
pub fn gen_path(n: usize) -> Result<MetricMeasureGraph> {
    if n < 2 {
        return Err(bad(format!("path needs n >= 2, got {n}")));
    }
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(format!("v{i}"), 1.0);
    }
    for i in 1..n {
        b.add_edge(VertexId(i - 1), VertexId(i), 1.0);
    }
    b.build()
}

/// Lattice `{0..n-1}^dim` with unit edges and `m(v) = (1 + |v - c|)^alpha`
/// where `c` is the lattice centre. Vertex ids run in row-major order.
pub fn gen_grid(n: usize, dim: usize, alpha: f64) -> Result<MetricMeasureGraph> {
    if n < 2 || !(dim == 2 || dim == 3) || !alpha.is_finite() {
        return Err(bad(format!("grid needs n >= 2, dim in {{2,3}}, finite alpha; got {n}, {dim}, {alpha}")));
    }
    let count = n.pow(dim as u32);
    let center = (n as f64 - 1.0) / 2.0;
    let coords = |mut id: usize| {
        let mut c = [0usize; 3];
        for k in (0..dim).rev() {
            c[k] = id % n;
            id /= n;
        }
        c
    };
    let mut b = GraphBuilder::new();
    for id in 0..count {
        let c = coords(id);
        let r2: f64 = c[..dim].iter().map(|&x| libm::pow(x as f64 - center, 2.0)).sum();
        let m = libm::pow(1.0 + libm::sqrt(r2), alpha);
        let label: Vec<String> = c[..dim].iter().map(|x| format!("{x}")).collect();
        b.add_vertex(label.join(","), m);
    }
    for id in 0..count {
        let c = coords(id);
        let mut stride = 1;
        for k in (0..dim).rev() {
            if c[k] + 1 < n {
                b.add_edge(VertexId(id), VertexId(id + stride), 1.0);
            }
            stride *= n;
        }
    }
    b.build()
}

/// Vertex id of lattice point `coords` in a [`gen_grid`] graph.
pub fn grid_vertex(n: usize, coords: &[usize]) -> VertexId {
    VertexId(coords.iter().fold(0, |acc, &c| acc * n + c))
}

/// Lattice point closest to the relative position `(px, py)` in `[0,1]^2`.
pub fn grid_vertex_at(n: usize, px: f64, py: f64) -> VertexId {
    let snap = |p: f64| (libm::round(p.clamp(0.0, 1.0) * (n as f64 - 1.0)) as usize).min(n - 1);
    grid_vertex(n, &[snap(px), snap(py)])
}

fn carpet_keeps(level: u32, mut i: usize, mut j: usize) -> bool {
    for _ in 0..level {
        if i % 3 == 1 && j % 3 == 1 {
            return false;
        }
        i /= 3;
        j /= 3;
    }
    true
}

/// Length of a side between adjacent cells of the level-`level` carpet,
/// chosen so that the corner-to-corner graph distance is 1 at every level.
pub fn carpet_edge_length(level: u32) -> f64 {
    1.0 / (2.0 * (libm::pow(3.0, level as f64) - 1.0))
}

/// Cell graph of the level-`level` Sierpinski carpet pre-fractal: the
/// `8^level` surviving cells of the `3^level` grid, unit measure each,
/// side-adjacent cells joined. Labels are `"i,j"`.
pub fn gen_carpet(level: u32) -> Result<MetricMeasureGraph> {
    if !(1..=5).contains(&level) {
        return Err(bad(format!("carpet level must be in 1..=5, got {level}")));
    }
    let side = 3usize.pow(level);
    let len = carpet_edge_length(level);
    let mut b = GraphBuilder::new();
    let mut id = vec![usize::MAX; side * side];
    for i in 0..side {
        for j in 0..side {
            if carpet_keeps(level, i, j) {
                id[i * side + j] = b.add_vertex(format!("{i},{j}"), 1.0).0;
            }
        }
    }
    for i in 0..side {
        for j in 0..side {
            let a = id[i * side + j];
            if a == usize::MAX {
                continue;
            }
            if i + 1 < side && id[(i + 1) * side + j] != usize::MAX {
                b.add_edge(VertexId(a), VertexId(id[(i + 1) * side + j]), len);
            }
            if j + 1 < side && id[i * side + j + 1] != usize::MAX {
                b.add_edge(VertexId(a), VertexId(id[i * side + j + 1]), len);
            }
        }
    }
    b.build()
}

/// Carpet cell whose centre is closest to the relative position `(px, py)`,
/// ties broken by vertex id.
pub fn carpet_cell_at(g: &MetricMeasureGraph, level: u32, px: f64, py: f64) -> Result<VertexId> {
    let side = libm::pow(3.0, level as f64);
    let mut best: Option<(f64, VertexId)> = None;
    for v in g.vertices() {
        let (i, j) = g
            .label(v)
            .split_once(',')
            .and_then(|(a, b)| Some((a.parse::<f64>().ok()?, b.parse::<f64>().ok()?)))
            .ok_or_else(|| bad(format!("not a carpet cell label: {}", g.label(v))))?;
        let (dx, dy) = ((i + 0.5) / side - px, (j + 0.5) / side - py);
        let d = dx * dx + dy * dy;
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v).ok_or(Error::EmptyGraph)
}

/// Two `n x n` unit grids joined by `neck_width` parallel paths of
/// `neck_len` vertices each, from the right edge of the first grid to the
/// left edge of the second.
pub fn gen_dumbbell(n: usize, neck_len: usize, neck_width: usize) -> Result<MetricMeasureGraph> {
    if n < 2 || neck_len < 1 || neck_width < 1 || neck_width > n {
        return Err(bad(format!(
            "dumbbell needs n >= 2, neck_len >= 1, 1 <= neck_width <= n; got {n}, {neck_len}, {neck_width}"
        )));
    }
    let mut b = GraphBuilder::new();
    let bell = |b: &mut GraphBuilder, side: &str| -> Vec<VertexId> {
        let ids: Vec<VertexId> = (0..n * n)
            .map(|k| b.add_vertex(format!("{side}:{},{}", k / n, k % n), 1.0))
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i + 1 < n {
                    b.add_edge(ids[i * n + j], ids[(i + 1) * n + j], 1.0);
                }
                if j + 1 < n {
                    b.add_edge(ids[i * n + j], ids[i * n + j + 1], 1.0);
                }
            }
        }
        ids
    };
    let left = bell(&mut b, "a");
    let right = bell(&mut b, "b");
    let first_row = (n - neck_width) / 2;
    for k in 0..neck_width {
        let row = first_row + k;
        let mut prev = left[row * n + n - 1];
        for t in 0..neck_len {
            let v = b.add_vertex(format!("neck{k}:{t}"), 1.0);
            b.add_edge(prev, v, 1.0);
            prev = v;
        }
        b.add_edge(prev, right[row * n], 1.0);
    }
    b.build()
}

/// Vertex measure rule for point clouds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureRule {
    Unit,
    /// Fraction of the cloud within `epsilon` of the point (itself included).
    LocalDensity,
}

/// `epsilon`-neighbourhood graph of a Euclidean point cloud: an edge joins
/// points at distance `<= epsilon`, with that distance as its length.
pub fn ingest_point_cloud(
    points: &[Vec<f64>],
    epsilon: f64,
    rule: MeasureRule,
) -> Result<MetricMeasureGraph> {
    if points.len() < 2 {
        return Err(bad(format!("need at least 2 points, got {}", points.len())));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(bad(format!("epsilon must be positive, got {epsilon}")));
    }
    let dim = points[0].len();
    if dim == 0 || points.iter().any(|p| p.len() != dim || p.iter().any(|c| !c.is_finite())) {
        return Err(bad("points must share a positive dimension and be finite".into()));
    }
    let n = points.len();
    let dist = |a: &[f64], b: &[f64]| {
        libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>())
    };
    let mut near = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let d = dist(&points[i], &points[j]);
            if d == 0.0 {
                return Err(bad(format!("points {i} and {j} coincide")));
            }
            if d <= epsilon {
                near[i].push((j, d));
            }
        }
    }
    let mut degree = vec![1usize; n];
    for i in 0..n {
        for &(j, _) in &near[i] {
            degree[i] += 1;
            degree[j] += 1;
        }
    }
    let mut b = GraphBuilder::new();
    for (i, &deg) in degree.iter().enumerate() {
        let m = match rule {
            MeasureRule::Unit => 1.0,
            MeasureRule::LocalDensity => deg as f64 / n as f64,
        };
        b.add_vertex(format!("p{i}"), m);
    }
    for (i, list) in near.iter().enumerate() {
        for &(j, d) in list {
            b.add_edge(VertexId(i), VertexId(j), d);
        }
    }
    b.build()
}

/// `n` points drawn uniformly from `[0,1]^dim`.
pub fn uniform_points(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect()
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// independently with probability `extra`. Measures are uniform in
/// `[1, 3]` and lengths uniform in `[0.5, 2]`.
pub fn gen_random(n: usize, extra: f64, seed: u64) -> Result<MetricMeasureGraph> {
    if n < 2 || !(0.0..=1.0).contains(&extra) {
        return Err(bad(format!("random graph needs n >= 2 and extra in [0,1]; got {n}, {extra}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(format!("r{i}"), rng.gen_range(1.0..=3.0));
    }
    let mut adj = vec![vec![false; n]; n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        adj[i][j] = true;
        adj[j][i] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i][j] && rng.gen_bool(extra) {
                adj[i][j] = true;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] || adj[j][i] {
                b.add_edge(VertexId(i), VertexId(j), rng.gen_range(0.5..=2.0));
            }
        }
    }
    b.build()
}

/// Declarative description of a generated space.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Path { n: usize },
    Grid { n: usize, dim: usize, alpha: f64 },
    Carpet { level: u32 },
    Dumbbell { n: usize, neck_len: usize, neck_width: usize },
    PointCloud { n: usize, dim: usize, epsilon: f64, rule: MeasureRule, seed: u64 },
    Random { n: usize, extra: f64, seed: u64 },
}

impl SpaceSpec {
    pub fn build(&self) -> Result<MetricMeasureGraph> {
        match *self {
            SpaceSpec::Path { n } => gen_path(n),
            SpaceSpec::Grid { n, dim, alpha } => gen_grid(n, dim, alpha),
            SpaceSpec::Carpet { level } => gen_carpet(level),
            SpaceSpec::Dumbbell { n, neck_len, neck_width } => gen_dumbbell(n, neck_len, neck_width),
            SpaceSpec::PointCloud { n, dim, epsilon, rule, seed } => {
                ingest_point_cloud(&uniform_points(n, dim, seed), epsilon, rule)
            }
            SpaceSpec::Random { n, extra, seed } => gen_random(n, extra, seed),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Path { n } => write!(f, "path n={n}"),
            SpaceSpec::Grid { n, dim, alpha } => write!(f, "grid n={n} dim={dim} alpha={alpha}"),
            SpaceSpec::Carpet { level } => write!(f, "carpet level={level}"),
            SpaceSpec::Dumbbell { n, neck_len, neck_width } => {
                write!(f, "dumbbell n={n} neck_len={neck_len} neck_width={neck_width}")
            }
            SpaceSpec::PointCloud { n, dim, epsilon, rule, seed } => {
                write!(f, "point_cloud n={n} dim={dim} epsilon={epsilon} rule={rule:?} seed={seed}")
            }
            SpaceSpec::Random { n, extra, seed } => write!(f, "random n={n} extra={extra} seed={seed}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energies::min_cut_energy;
    use crate::graph::{diameter, shortest_paths};
    use crate::regularity::{ahlfors_exponent, doubling_constant, full_doubling_constant, geometric_radii};

    #[test]
    fn paths() {
        let g = gen_path(5).unwrap();
        assert_eq!((g.len(), g.edges().len(), g.total_measure()), (5, 4, 5.0));
        assert_eq!(gen_path(2).unwrap().edges().len(), 1);
        assert!(matches!(gen_path(1), Err(Error::BadParam(_))));
    }

    #[test]
    fn grid_counts() {
        for (n, dim) in [(3usize, 2usize), (4, 2), (3, 3), (5, 3)] {
            let g = gen_grid(n, dim, 0.0).unwrap();
            assert_eq!(g.len(), n.pow(dim as u32));
            assert_eq!(g.edges().len(), dim * n.pow(dim as u32 - 1) * (n - 1));
        }
        assert_eq!(gen_grid(3, 2, 0.0).unwrap().total_measure(), 9.0);
        assert!(gen_grid(1, 2, 0.0).is_err());
        assert!(gen_grid(3, 4, 0.0).is_err());
        let d = shortest_paths(&gen_grid(3, 2, 0.0).unwrap(), VertexId(0)).unwrap();
        assert_eq!(d.dist(VertexId(8)), 4.0);
    }

    #[test]
    fn weighted_grid_grows_from_center() {
        let g = gen_grid(9, 2, 1.0).unwrap();
        let c = grid_vertex(9, &[4, 4]);
        assert_eq!(g.measure(c), 1.0);
        assert_eq!(g.measure(grid_vertex(9, &[4, 7])), 4.0);
        let plain = gen_grid(9, 2, 0.0).unwrap();
        let centers: Vec<VertexId> = g.vertices().collect();
        let radii = [1.0, 2.0, 3.0];
        let cw = doubling_constant(&g, &centers, &radii).unwrap();
        let cp = doubling_constant(&plain, &centers, &radii).unwrap();
        assert!(cw.is_finite() && cw >= cp);
    }

    #[test]
    fn carpet_counts_and_scale() {
        for level in 1..=4u32 {
            let g = gen_carpet(level).unwrap();
            assert_eq!(g.len(), 8usize.pow(level));
        }
        let ring = gen_carpet(1).unwrap();
        assert!(ring.vertices().all(|v| ring.degree(v) == 2));
        for level in 1..=3u32 {
            let g = gen_carpet(level).unwrap();
            let side = 3usize.pow(level) - 1;
            let a = g.vertex("0,0").unwrap();
            let b = g.vertex(&format!("{side},{side}")).unwrap();
            let d = shortest_paths(&g, a).unwrap().dist(b);
            assert!((d - 1.0).abs() < 1e-12);
        }
        assert!(gen_carpet(0).is_err());
        assert!(gen_carpet(6).is_err());
    }

    #[test]
    fn carpet_cells_snap() {
        let g = gen_carpet(2).unwrap();
        let v = carpet_cell_at(&g, 2, 0.5, 0.5).unwrap();
        // the centre block is removed; the nearest survivors border it
        // four survivors tie at distance 2/9; the lowest id wins
        assert_eq!(g.label(v), "2,4");
        assert_eq!(g.label(carpet_cell_at(&g, 2, 0.0, 0.0).unwrap()), "0,0");
    }

    #[test]
    fn dumbbells() {
        let g = gen_dumbbell(4, 1, 1).unwrap();
        assert_eq!(g.len(), 33);
        assert_eq!(gen_dumbbell(3, 2, 3).unwrap().len(), 18 + 6);
        assert!(gen_dumbbell(4, 0, 1).is_err());

        // cut across the neck weakens as the bells grow
        let mut last = f64::INFINITY;
        for n in [4usize, 6, 8] {
            let g = gen_dumbbell(n, 1, 1).unwrap();
            let x = g.vertex(&format!("a:{},0", n / 2)).unwrap();
            let y = g.vertex(&format!("b:{},{}", n / 2, n - 1)).unwrap();
            let c = min_cut_energy(&g, x, y, 2.0).unwrap().value;
            assert!(c < last, "n={n}: {c} vs {last}");
            last = c;
        }
    }

    #[test]
    fn point_clouds() {
        let square = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        let g = ingest_point_cloud(&square, 1.0, MeasureRule::Unit).unwrap();
        assert_eq!(g.edges().len(), 4);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        assert!(matches!(
            ingest_point_cloud(&square, 0.5, MeasureRule::Unit),
            Err(Error::DisconnectedGraph { .. })
        ));
        assert!(ingest_point_cloud(&square[..1], 1.0, MeasureRule::Unit).is_err());

        let pts = uniform_points(100, 2, 11);
        let g = ingest_point_cloud(&pts, 0.25, MeasureRule::LocalDensity).unwrap();
        let c = full_doubling_constant(&g).unwrap();
        assert!(c.is_finite() && c >= 1.0);
        assert_eq!(pts, uniform_points(100, 2, 11));
    }

    #[test]
    fn random_graphs_are_deterministic_and_connected() {
        let a = gen_random(12, 0.2, 5).unwrap();
        let b = gen_random(12, 0.2, 5).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.measures(), b.measures());
        assert!(a.measures().iter().all(|&m| (1.0..=3.0).contains(&m)));
        assert!(diameter(&a).is_finite());
    }

    #[test]
    fn grid_ahlfors_midscale() {
        let g = gen_grid(16, 2, 0.0).unwrap();
        let centers = [grid_vertex(16, &[7, 7]), grid_vertex(16, &[8, 8])];
        let est = ahlfors_exponent(&g, &centers, &geometric_radii(2.0, 6.0, 1.25)).unwrap();
        assert!((est.exponent - 2.0).abs() < 0.3, "{est:?}");
    }
}
