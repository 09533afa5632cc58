use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{dist_le, distances_to_set, MetricMeasureGraph};

/// Radii at which the annulus ratio is evaluated; the content is the
/// minimum over them.
#[derive(Debug, Clone, PartialEq)]
pub enum RadiusSchedule {
    /// Only the distance from `A` to the nearest vertex outside it.
    FirstShell,
    /// The first `k` distinct positive values of `d(., A)`.
    Shells(usize),
    Explicit(Vec<f64>),
}

impl RadiusSchedule {
    /// Concrete radii for the given distance-to-set values.
    pub fn radii(&self, dist: &[f64]) -> Result<Vec<f64>> {
        let shells = |k: usize| {
            let mut d: Vec<f64> = dist.iter().copied().filter(|&d| d > 0.0).collect();
            d.sort_by(f64::total_cmp);
            let mut out: Vec<f64> = Vec::new();
            for v in d {
                if out.len() == k {
                    break;
                }
                if out.last().is_none_or(|&last| !dist_le(v, last)) {
                    out.push(v);
                }
            }
            out
        };
        match self {
            RadiusSchedule::FirstShell => Ok(shells(1)),
            RadiusSchedule::Shells(0) => Err(Error::EmptySchedule),
            RadiusSchedule::Shells(k) => Ok(shells(*k)),
            RadiusSchedule::Explicit(r) if r.is_empty() => Err(Error::EmptySchedule),
            RadiusSchedule::Explicit(r) => {
                if r.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
                    return Err(Error::BadParam("radii must be positive and finite".into()));
                }
                Ok(r.clone())
            }
        }
    }
}

/// `min over the schedule of w(closed r-neighbourhood of A minus A) / r^p`.
///
/// Returns 0 when `A` is the whole vertex set.
pub fn minkowski_content(
    g: &MetricMeasureGraph,
    set: &[bool],
    weights: &[f64],
    p: f64,
    schedule: &RadiusSchedule,
) -> Result<f64> {
    if !set.iter().any(|&b| b) {
        return Err(Error::EmptySet);
    }
    let dist = distances_to_set(g, set);
    let radii = schedule.radii(&dist)?;
    if set.iter().all(|&b| b) {
        return Ok(0.0);
    }
    let value = radii
        .iter()
        .map(|&r| {
            let annulus: f64 = g
                .vertices()
                .filter(|v| !set[v.0] && dist_le(dist[v.0], r))
                .map(|v| weights[v.0])
                .sum();
            annulus / libm::pow(r, p)
        })
        .fold(f64::INFINITY, f64::min);
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{grid, path5};
    use crate::graph::VertexId;
    use crate::riesz::riesz_potential;
    use alloc::vec;

    #[test]
    fn path5_contents() {
        let g = path5();
        let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).unwrap();
        let w = f.riesz_measures();
        let omega = g.mask(&[VertexId(0), VertexId(1), VertexId(2)]);
        let first = RadiusSchedule::FirstShell;
        assert_eq!(minkowski_content(&g, &omega, w, 1.0, &first).unwrap(), 2.0);
        // boundary {v2, v3}: annulus {v1, v4}
        let bd = g.mask(&[VertexId(2), VertexId(3)]);
        assert_eq!(minkowski_content(&g, &bd, w, 1.0, &first).unwrap(), 2.0);
        // r = 2 adds v4 with zero weight: 2/2
        let two = RadiusSchedule::Shells(2);
        assert_eq!(minkowski_content(&g, &omega, w, 1.0, &two).unwrap(), 1.0);

        let all = vec![true; 5];
        assert_eq!(minkowski_content(&g, &all, w, 1.0, &first).unwrap(), 0.0);
    }

    #[test]
    fn schedule_errors() {
        let g = path5();
        let a = g.mask(&[VertexId(0)]);
        let w = g.measures();
        assert_eq!(
            minkowski_content(&g, &a, w, 1.0, &RadiusSchedule::Explicit(vec![])).unwrap_err(),
            Error::EmptySchedule
        );
        assert_eq!(
            minkowski_content(&g, &[false; 5], w, 1.0, &RadiusSchedule::FirstShell).unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn grid_square_first_shell() {
        let g = grid(7);
        let mut a = vec![false; 49];
        for i in 2..5 {
            for j in 2..5 {
                a[i * 7 + j] = true;
            }
        }
        // 12 side neighbours at distance 1
        let v = minkowski_content(&g, &a, g.measures(), 1.0, &RadiusSchedule::FirstShell).unwrap();
        assert_eq!(v, 12.0);
        let v = minkowski_content(&g, &a, g.measures(), 1.0, &RadiusSchedule::Explicit(vec![2.0]))
            .unwrap();
        // shells at distance 1 and 2: 12 + 16
        assert_eq!(v, 28.0 / 2.0);
    }
}
