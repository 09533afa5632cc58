//! Embedded oracle suite run by `mms selftest`.

use mms_core::energies::{
    brute_force_cut_infimum, capacity, energy_report, min_cut_energy, modulus_connecting, CutEnergy,
};
use mms_core::graph::{MetricMeasureGraph, VertexId};
use mms_core::poincare::{coarea_check, default_suite, scan_pair, CoareaKind, TestFunction};
use mms_core::riesz::riesz_potential;
use mms_core::spaces::{gen_grid, gen_path, gen_random, grid_vertex};

/// Deliberate defects, used to check that the suite notices them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Evaluate capacity on the two-hop instead of the one-hop neighbourhood.
    pub capacity: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn expect(what: &str, got: f64, want: f64) -> Outcome {
    if close(got, want) {
        Ok(format!("{what} = {got}"))
    } else {
        Err(format!("{what} = {got}, expected {want}"))
    }
}

fn err(e: mms_core::Error) -> String {
    e.to_string()
}

fn capacity_under_test(g: &MetricMeasureGraph, set: &[bool], w: &[f64], faults: Faults) -> Result<f64, String> {
    let hops = if faults.capacity { 2 } else { 1 };
    capacity(g, set, w, hops).map_err(err)
}

/// Exhaustive capacity: every indicator that is 1 on `set` and 0 off its
/// one-hop neighbourhood.
fn capacity_oracle(g: &MetricMeasureGraph, set: &[bool], w: &[f64]) -> f64 {
    let hood = g.hop_neighborhood(set, 1);
    if hood.iter().all(|&b| b) {
        return 0.0;
    }
    let free: Vec<usize> = (0..g.len()).filter(|&i| hood[i] && !set[i]).collect();
    let mut best = f64::INFINITY;
    for bits in 0u64..(1 << free.len()) {
        let mut inside = set.to_vec();
        for (k, &i) in free.iter().enumerate() {
            inside[i] = bits >> k & 1 == 1;
        }
        let cost: f64 = g
            .vertices()
            .map(|v| {
                let grad = g
                    .neighbors(v)
                    .iter()
                    .filter(|nb| inside[nb.to.0] != inside[v.0])
                    .map(|nb| 1.0 / nb.len)
                    .fold(0.0, f64::max);
                w[v.0] * grad
            })
            .sum();
        best = best.min(cost);
    }
    best
}

fn path5_riesz() -> Outcome {
    let g = gen_path(5).map_err(err)?;
    let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).map_err(err)?;
    for (i, want) in [0.0, 2.0, 2.0, 2.0, 0.0].into_iter().enumerate() {
        expect(&format!("R(v{i})"), f.potential(VertexId(i)), want)?;
    }
    expect("total mass", f.total_mass(), 6.0)
}

fn path5_mincut() -> Outcome {
    let g = gen_path(5).map_err(err)?;
    let w = min_cut_energy(&g, VertexId(0), VertexId(4), 1.0).map_err(err)?;
    let omega: Vec<usize> = w.omega.iter().map(|v| v.0).collect();
    if omega != [0, 1, 2] {
        return Err(format!("witness {omega:?}, expected [0, 1, 2]"));
    }
    expect("min cut", w.value, 2.0)
}

fn path5_energies(faults: Faults) -> Outcome {
    let g = gen_path(5).map_err(err)?;
    let omega = [VertexId(0), VertexId(1), VertexId(2)];
    let r = energy_report(&g, VertexId(0), VertexId(4), &omega, 1.0, 1.0).map_err(err)?;
    let f = riesz_potential(&g, VertexId(0), VertexId(4), 1.0).map_err(err)?;
    let bc = capacity_under_test(&g, &g.mask(&omega), f.riesz_measures(), faults)?;
    for (name, got, want) in [
        ("bp", r.bp, 2.0),
        ("bp_r", r.bp_r, 2.0),
        ("bc", bc, 2.0),
        ("bmc", r.bmc, 2.0),
        ("bmc0", r.bmc0, 2.0),
        ("bh_f", r.bh_f, 4.0),
        ("bh_g", r.bh_g, 4.0),
        ("mod1", r.mod1, 2.0),
    ] {
        expect(name, got, want)?;
    }
    Ok("bp = bp_r = bc = bmc = mod1 = 2, bh = 4".into())
}

fn capacity_matches_oracle(faults: Faults) -> Outcome {
    let mut checked = 0;
    for seed in 0..12u64 {
        let g = gen_random(6 + seed as usize % 4, 0.2, seed).map_err(err)?;
        let mut set = vec![false; g.len()];
        set[0] = true;
        set[seed as usize % g.len()] = true;
        let got = capacity_under_test(&g, &set, g.measures(), faults)?;
        let want = capacity_oracle(&g, &set, g.measures());
        expect(&format!("capacity on random graph {seed}"), got, want)?;
        checked += 1;
    }
    Ok(format!("{checked} graphs"))
}

fn mincut_matches_oracle() -> Outcome {
    let mut checked = 0;
    for seed in 0..40u64 {
        let g = gen_random(7 + seed as usize % 6, 0.1, 100 + seed).map_err(err)?;
        let x = VertexId(0);
        let hops = g.hop_distances(x);
        let (far, &h) = hops.iter().enumerate().max_by_key(|&(_, h)| *h).expect("nonempty");
        if h < 3 {
            continue;
        }
        let y = VertexId(far);
        let cut = min_cut_energy(&g, x, y, 2.0).map_err(err)?;
        let oracle = brute_force_cut_infimum(&g, x, y, 2.0, CutEnergy::BoundaryVertex).map_err(err)?;
        expect(&format!("min cut on random graph {seed}"), cut.value, oracle.value)?;
        if cut.omega != oracle.omega {
            return Err(format!("witness differs from oracle on random graph {seed}"));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err("no instance had separable poles".into());
    }
    Ok(format!("{checked} graphs"))
}

fn grid_duality() -> Outcome {
    let g = gen_grid(8, 2, 0.0).map_err(err)?;
    for (a, b) in [([1, 1], [6, 6]), ([0, 3], [7, 4]), ([2, 5], [6, 1])] {
        let (x, y) = (grid_vertex(8, &a), grid_vertex(8, &b));
        let field = riesz_potential(&g, x, y, 2.0).map_err(err)?;
        let m = modulus_connecting(&g, &field, None).map_err(err)?;
        let c = min_cut_energy(&g, x, y, 2.0).map_err(err)?;
        expect("modulus vs min cut", m.value, c.value)?;
    }
    Ok("3 pairs on grid 8".into())
}

fn path_coarea() -> Outcome {
    let g = gen_path(16).map_err(err)?;
    let values: Vec<f64> = (0..16).map(|i| f64::from(i * i % 7 + i)).collect();
    let mut sorted = values.clone();
    sorted.sort_by(f64::total_cmp);
    let u = TestFunction::new(&g, "monotone", sorted).map_err(err)?;
    let r = coarea_check(&g, &u, g.measures(), CoareaKind::Bv).map_err(err)?;
    if r.lhs <= r.rhs * (1.0 + 1e-12) {
        Ok(format!("lhs {} <= rhs {}", r.lhs, r.rhs))
    } else {
        Err(format!("lhs {} > rhs {}", r.lhs, r.rhs))
    }
}

fn grid_ptpi_bound() -> Outcome {
    let g = gen_grid(8, 2, 0.0).map_err(err)?;
    let suite = default_suite(&g, 10, 7).map_err(err)?;
    let r = scan_pair(&g, grid_vertex(8, &[1, 1]), grid_vertex(8, &[6, 6]), 2.0, &suite).map_err(err)?;
    if r.pass {
        Ok(format!("c_fn {} <= 2/c_cut {}", r.c_fn, r.bound()))
    } else {
        Err(format!("c_fn {} > 2/c_cut {} ({})", r.c_fn, r.bound(), r.worst))
    }
}

/// Runs every check; does not stop at the first failure.
pub fn run(faults: Faults) -> Vec<Check> {
    let checks: [(&'static str, Box<dyn Fn() -> Outcome>); 8] = [
        ("path5 riesz potential", Box::new(path5_riesz)),
        ("path5 minimum cut", Box::new(path5_mincut)),
        ("path5 energies", Box::new(move || path5_energies(faults))),
        ("capacity vs exhaustive oracle", Box::new(move || capacity_matches_oracle(faults))),
        ("min cut vs exhaustive oracle", Box::new(mincut_matches_oracle)),
        ("modulus/min-cut duality on grid", Box::new(grid_duality)),
        ("BV coarea on path", Box::new(path_coarea)),
        ("pointwise Poincare bound on grid", Box::new(grid_ptpi_bound)),
    ];
    checks
        .iter()
        .map(|(name, f)| match f() {
            Ok(detail) => Check { name, pass: true, detail },
            Err(detail) => Check { name, pass: false, detail },
        })
        .collect()
}
