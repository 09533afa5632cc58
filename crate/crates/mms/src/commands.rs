//! One function per subcommand. Each validates its parameters, computes,
//! and writes its outputs with a provenance header.

use std::path::{Path, PathBuf};

use log::info;
use mms_core::energies::{energy_report, min_cut_energy, CutWitness};
use mms_core::graph::{shortest_paths, MetricMeasureGraph, VertexId};
use mms_core::poincare::{default_suite, sample_pole_pairs, scan_pair, ScanReport};
use mms_core::riesz::riesz_potential;
use mms_core::spaces::SpaceSpec;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::io::{load_graph, load_omega, save_graph, LoadedGraph};
use crate::output::{sig12, write_csv, write_json, Provenance};

pub const ENERGY_COLUMNS: [&str; 14] = [
    "x", "y", "L", "p", "bp", "bp_r", "bc", "bmc", "bmc0", "bh_f", "bh_g", "mod1", "witness_size",
    "bam_local",
];
pub const SCAN_COLUMNS: [&str; 8] =
    ["pair_id", "x", "y", "L", "c_cut", "c_fn", "bound_2_over_ccut", "pass"];
pub const RIESZ_COLUMNS: [&str; 6] = ["vertex_id", "d_x", "d_y", "R", "in_ball", "riesz_m"];

pub fn check_truncation(l: f64) -> Result<()> {
    if l.is_finite() && l >= 1.0 {
        Ok(())
    } else {
        Err(CliError::BadParam(format!("--L must be a finite number >= 1, got {l}")))
    }
}

pub fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(CliError::BadParam(format!("--p must be a finite number >= 1, got {p}")))
    }
}

fn graph_config(path: &Path, loaded: &LoadedGraph) -> Value {
    json!({ "path": path.display().to_string(), "sha256": loaded.sha256 })
}

fn labels(g: &MetricMeasureGraph, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

/// Writes a generated space as a graph file and returns its vertex count.
pub fn gen(spec: &SpaceSpec, out: &Path) -> Result<usize> {
    let g = spec.build()?;
    let seed = match spec {
        SpaceSpec::PointCloud { seed, .. } | SpaceSpec::Random { seed, .. } => Some(*seed),
        _ => None,
    };
    let provenance = Provenance::new(json!({ "command": "gen", "space": spec.to_string() }), seed);
    save_graph(out, &g, &provenance)?;
    info!("wrote {} vertices, {} edges to {}", g.len(), g.edges().len(), out.display());
    Ok(g.len())
}

pub struct EnergiesArgs<'a> {
    pub graph: &'a Path,
    pub x: Option<&'a str>,
    pub y: Option<&'a str>,
    pub omega: &'a Path,
    pub l: f64,
    pub p: f64,
    pub out: Option<&'a Path>,
}

/// One energy row for a given separating set. Poles come from the flags or,
/// failing that, from the set file.
pub fn energies(args: &EnergiesArgs<'_>) -> Result<Vec<String>> {
    check_truncation(args.l)?;
    check_exponent(args.p)?;
    let loaded = load_graph(args.graph)?;
    let g = &loaded.graph;
    let omega = load_omega(args.omega, g)?;
    let pick = |flag: Option<&str>, file: Option<VertexId>, name: &str| -> Result<VertexId> {
        match (flag.map(|s| g.vertex(s)).transpose()?, file) {
            (Some(a), Some(b)) if a != b => {
                Err(CliError::BadParam(format!("--{name} disagrees with the set file")))
            }
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(CliError::BadParam(format!("pole {name} not given"))),
        }
    };
    let x = pick(args.x, omega.poles.0, "x")?;
    let y = pick(args.y, omega.poles.1, "y")?;
    let r = energy_report(g, x, y, &omega.members, args.l, args.p)?;
    let row = vec![
        g.label(x).to_string(),
        g.label(y).to_string(),
        sig12(r.l),
        sig12(r.p),
        sig12(r.bp),
        sig12(r.bp_r),
        sig12(r.bc),
        sig12(r.bmc),
        sig12(r.bmc0),
        sig12(r.bh_f),
        sig12(r.bh_g),
        sig12(r.mod1),
        r.witness.omega.len().to_string(),
        sig12(r.bam_local),
    ];
    let config = json!({
        "command": "energies",
        "graph": graph_config(args.graph, &loaded),
        "x": g.label(x), "y": g.label(y),
        "omega": labels(g, &omega.members),
        "L": args.l, "p": args.p,
    });
    write_csv(args.out, &Provenance::new(config, None), &ENERGY_COLUMNS, &[row.clone()])?;
    Ok(row)
}

#[derive(Debug, Serialize)]
struct WitnessJson {
    x: String,
    y: String,
    #[serde(rename = "L")]
    l: f64,
    value: f64,
    omega: Vec<String>,
    boundary: Vec<String>,
}

/// Minimum cut energy; the witness goes to `out` as JSON when given.
pub fn mincut(graph: &Path, x: &str, y: &str, l: f64, out: Option<&Path>) -> Result<CutWitness> {
    check_truncation(l)?;
    let loaded = load_graph(graph)?;
    let g = &loaded.graph;
    let (xv, yv) = (g.vertex(x)?, g.vertex(y)?);
    let w = min_cut_energy(g, xv, yv, l)?;
    if let Some(path) = out {
        let config = json!({
            "command": "mincut", "graph": graph_config(graph, &loaded), "x": x, "y": y, "L": l,
        });
        let body = WitnessJson {
            x: x.into(),
            y: y.into(),
            l,
            value: w.value,
            omega: labels(g, &w.omega),
            boundary: labels(g, &w.boundary),
        };
        write_json(Some(path), &Provenance::new(config, None), &body)?;
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq)]
pub enum PoleChoice {
    Explicit(Vec<(String, String)>),
    Random(usize),
    /// The pair realizing the diameter, lowest ids first.
    Diameter,
}

pub struct ScanArgs<'a> {
    pub graph: &'a Path,
    pub poles: PoleChoice,
    pub l: f64,
    pub suite_size: usize,
    pub seed: u64,
    /// Worker threads; 0 picks the number of cores.
    pub threads: usize,
    pub out: &'a Path,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct ScanSummary {
    pub min_c_cut: f64,
    pub max_c_fn: f64,
    pub n_pairs: usize,
    pub seed: u64,
}

pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

fn diameter_pair(g: &MetricMeasureGraph) -> Result<(VertexId, VertexId)> {
    let mut best = (0.0, VertexId(0), VertexId(0));
    for x in g.vertices() {
        let field = shortest_paths(g, x)?;
        for y in g.vertices().filter(|&y| y > x) {
            if field.dist(y) > best.0 {
                best = (field.dist(y), x, y);
            }
        }
    }
    Ok((best.1, best.2))
}

fn resolve_poles(g: &MetricMeasureGraph, choice: &PoleChoice, seed: u64) -> Result<Vec<(VertexId, VertexId)>> {
    let pairs = match choice {
        PoleChoice::Explicit(list) => list
            .iter()
            .map(|(x, y)| Ok((g.vertex(x)?, g.vertex(y)?)))
            .collect::<Result<Vec<_>>>()?,
        PoleChoice::Random(k) => sample_pole_pairs(g, *k, seed),
        PoleChoice::Diameter => vec![diameter_pair(g)?],
    };
    if pairs.is_empty() {
        return Err(CliError::BadParam("empty pole list".into()));
    }
    Ok(pairs)
}

/// Cut constant and worst function ratio for every pair, in parallel.
/// Rows keep the pair order whatever the thread count.
pub fn pi_scan(args: &ScanArgs<'_>) -> Result<ScanSummary> {
    check_truncation(args.l)?;
    if args.suite_size == 0 {
        return Err(CliError::BadParam("--suite must be positive".into()));
    }
    let loaded = load_graph(args.graph)?;
    let g = &loaded.graph;
    let pairs = resolve_poles(g, &args.poles, args.seed)?;
    let suite = default_suite(g, args.suite_size, args.seed)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.threads).build()?;
    let results = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(x, y)| scan_pair(g, x, y, args.l, &suite))
            .collect::<mms_core::Result<Vec<_>>>()
    })?;
    let report = ScanReport::from_pairs(results);

    let rows: Vec<Vec<String>> = report
        .pairs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                i.to_string(),
                g.label(r.x).to_string(),
                g.label(r.y).to_string(),
                sig12(args.l),
                sig12(r.c_cut),
                sig12(r.c_fn),
                sig12(r.bound()),
                r.pass.to_string(),
            ]
        })
        .collect();
    let poles = match &args.poles {
        PoleChoice::Explicit(list) => json!(list),
        PoleChoice::Random(k) => json!({ "random": k }),
        PoleChoice::Diameter => json!("diameter"),
    };
    let config = json!({
        "command": "pi-scan",
        "graph": graph_config(args.graph, &loaded),
        "poles": poles,
        "L": args.l,
        "suite": args.suite_size,
    });
    let provenance = Provenance::new(config, Some(args.seed));
    write_csv(Some(args.out), &provenance, &SCAN_COLUMNS, &rows)?;
    let summary = ScanSummary {
        min_c_cut: report.min_c_cut,
        max_c_fn: report.max_c_fn,
        n_pairs: report.pairs.len(),
        seed: args.seed,
    };
    write_json(Some(&summary_path(args.out)), &provenance, &summary)?;
    if !report.all_pass() {
        log::warn!("{} pairs exceed the duality bound", report.pairs.iter().filter(|p| !p.pass).count());
    }
    Ok(summary)
}

/// Per-vertex distances, potential and Riesz measure.
pub fn riesz_dump(graph: &Path, x: &str, y: &str, l: f64, out: Option<&Path>) -> Result<()> {
    check_truncation(l)?;
    let loaded = load_graph(graph)?;
    let g = &loaded.graph;
    let field = riesz_potential(g, g.vertex(x)?, g.vertex(y)?, l)?;
    let rows: Vec<Vec<String>> = g
        .vertices()
        .map(|v| {
            vec![
                g.label(v).to_string(),
                sig12(field.dist_x(v)),
                sig12(field.dist_y(v)),
                sig12(field.potential(v)),
                u8::from(field.in_ball(v)).to_string(),
                sig12(field.riesz_measure(v)),
            ]
        })
        .collect();
    let config = json!({
        "command": "riesz-dump", "graph": graph_config(graph, &loaded), "x": x, "y": y, "L": l,
    });
    write_csv(out, &Provenance::new(config, None), &RIESZ_COLUMNS, &rows)
}
