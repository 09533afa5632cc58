//! Graph and separating-set files.
//!
//! Graph file: `{"vertices": [{"id", "m"}...], "edges": [{"u", "v", "len"}...]}`.
//! Unknown top-level keys (such as `provenance`) are ignored.

use std::fs;
use std::path::Path;

use mms_core::graph::{GraphBuilder, MetricMeasureGraph, VertexId};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::output::{sha256_hex, write_json, Provenance};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: String,
    pub m: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    pub len: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphFile {
    pub fn from_graph(g: &MetricMeasureGraph) -> Self {
        GraphFile {
            vertices: g
                .vertices()
                .map(|v| VertexRecord { id: g.label(v).into(), m: g.measure(v) })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|&(u, v, len)| EdgeRecord { u: g.label(u).into(), v: g.label(v).into(), len })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<MetricMeasureGraph> {
        let mut b = GraphBuilder::new();
        for rec in &self.vertices {
            b.add_vertex(rec.id.as_str(), rec.m);
        }
        for e in &self.edges {
            b.add_edge_by_label(&e.u, &e.v, e.len);
        }
        Ok(b.build()?)
    }
}

/// A loaded graph and the SHA-256 of its file.
pub struct LoadedGraph {
    pub graph: MetricMeasureGraph,
    pub sha256: String,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub fn load_graph(path: &Path) -> Result<LoadedGraph> {
    let bytes = read(path)?;
    let file: GraphFile =
        serde_json::from_slice(&bytes).map_err(|source| CliError::Json { path: path.into(), source })?;
    Ok(LoadedGraph { graph: file.build()?, sha256: sha256_hex(&bytes) })
}

pub fn save_graph(path: &Path, g: &MetricMeasureGraph, provenance: &Provenance) -> Result<()> {
    write_json(Some(path), provenance, &GraphFile::from_graph(g))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OmegaFile {
    Members(Vec<String>),
    WithPoles { x: Option<String>, y: Option<String>, omega: Vec<String> },
}

/// Separating set given by vertex ids, with the poles if the file names them.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaInput {
    pub members: Vec<VertexId>,
    pub poles: (Option<VertexId>, Option<VertexId>),
}

/// Reads either a JSON array of vertex ids or `{"x", "y", "omega"}`.
pub fn load_omega(path: &Path, g: &MetricMeasureGraph) -> Result<OmegaInput> {
    let bytes = read(path)?;
    let file: OmegaFile =
        serde_json::from_slice(&bytes).map_err(|source| CliError::Json { path: path.into(), source })?;
    let (ids, x, y) = match file {
        OmegaFile::Members(ids) => (ids, None, None),
        OmegaFile::WithPoles { x, y, omega } => (omega, x, y),
    };
    let lookup = |id: Option<String>| id.map(|s| g.vertex(&s)).transpose();
    Ok(OmegaInput {
        members: ids.iter().map(|s| g.vertex(s)).collect::<std::result::Result<_, _>>()?,
        poles: (lookup(x)?, lookup(y)?),
    })
}
