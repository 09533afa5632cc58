use crate::graph::MetricMeasureGraph;
use crate::riesz::RieszField;
use crate::separating::SetBoundary;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerimeterMode {
    /// Cut edges weighted by `m` and the mean potential of their endpoints.
    Riesz,
    /// Cut edges weighted by the Riesz measure `m^L`.
    Measure,
}

/// `sum over cut edges (w(u) + w(v)) / (2 len(u, v))`.
pub fn edge_perimeter(g: &MetricMeasureGraph, boundary: &SetBoundary, weights: &[f64]) -> f64 {
    boundary
        .cut_edges
        .iter()
        .map(|&(u, v)| {
            let len = g.edge_len(u, v).expect("cut edge exists");
            (weights[u.0] + weights[v.0]) / (2.0 * len)
        })
        .sum()
}

pub fn perimeter(
    g: &MetricMeasureGraph,
    boundary: &SetBoundary,
    field: &RieszField,
    mode: PerimeterMode,
) -> f64 {
    match mode {
        PerimeterMode::Measure => edge_perimeter(g, boundary, field.riesz_measures()),
        PerimeterMode::Riesz => boundary
            .cut_edges
            .iter()
            .map(|&(u, v)| {
                let len = g.edge_len(u, v).expect("cut edge exists");
                let pot = |w| {
                    let r = field.potential(w);
                    if r.is_finite() { r } else { 0.0 }
                };
                (g.measure(u) + g.measure(v)) / (2.0 * len) * (pot(u) + pot(v)) / 2.0
            })
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::path5;
    use crate::graph::VertexId;
    use crate::riesz::riesz_potential;
    use crate::separating::validate;

    #[test]
    fn path5_perimeters() {
        let g = path5();
        let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).unwrap();
        let omega = [VertexId(0), VertexId(1), VertexId(2)];
        let ss = validate(&g, &omega, VertexId(0), VertexId(4)).unwrap();
        // (1+1)/2 * (2+2)/2
        assert_eq!(perimeter(&g, ss.boundary(), &f, PerimeterMode::Riesz), 2.0);
        assert_eq!(perimeter(&g, ss.boundary(), &f, PerimeterMode::Measure), 2.0);
        assert_eq!(edge_perimeter(&g, ss.boundary(), g.measures()), 1.0);
    }

    #[test]
    fn zero_weight_boundary() {
        let g = path5();
        let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).unwrap();
        let b = SetBoundary::of(&g, &g.mask(&[VertexId(4)]));
        assert_eq!(b.cut_edges.len(), 1);
        let w = [0.0; 5];
        assert_eq!(edge_perimeter(&g, &b, &w), 0.0);
        // m^L(v3) = 2, m^L(v4) = 0
        assert_eq!(perimeter(&g, &b, &f, PerimeterMode::Measure), 1.0);
    }
}
