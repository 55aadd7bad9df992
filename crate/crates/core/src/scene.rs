//! The scene document: chambers, typed edges and realized vertices of one
//! generation run, serialized as JSON or Wavefront OBJ.
//!
//! Output is a pure function of the run: arrays are sorted by id, keys keep
//! a fixed order and positions are rounded to 9 significant digits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ChamberGraph, Edge};
use crate::pipeline::Generated;
use crate::scalar::Rational;
use crate::spec::{Family, Kind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    pub schema_version: u32,
    pub spec: SceneSpec,
    pub vertices: Vec<SceneVertex>,
    pub chambers: Vec<SceneChamber>,
    pub edges: Vec<SceneEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    pub stats: SceneStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    pub family: Family,
    pub p: u32,
    pub radius: usize,
    pub layout: SceneLayout,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneLayout {
    pub height_step: f64,
    pub radial_step: f64,
    pub embed_center: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneVertex {
    pub id: usize,
    pub pos: [f64; 3],
    pub cotype: usize,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneChamber {
    pub id: usize,
    pub word: Vec<usize>,
    pub fiber: usize,
    pub height: usize,
    pub label: Vec<String>,
    pub vertex_ids: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneEdge {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "type")]
    pub kind: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneStats {
    pub chamber_count: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_distance_from_base: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneFormat {
    Json,
    Obj,
}

/// Rounds to 9 significant digits; values within 1e-12 of zero become 0.
pub fn round_position(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        return 0.0;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

impl SceneDocument {
    pub fn from_generated(run: &Generated) -> Self {
        let layout = &run.options.layout;
        let vertices = run
            .realization
            .vertices
            .iter()
            .map(|v| SceneVertex {
                id: v.id,
                pos: [v.position.x, v.position.y, v.position.z].map(round_position),
                cotype: v.cotype,
                height: v.height,
            })
            .collect::<Vec<_>>();
        let chambers = run
            .realization
            .chambers
            .iter()
            .zip(&run.chambers)
            .map(|(rc, rec)| SceneChamber {
                id: rc.id,
                word: rec.word.clone(),
                fiber: rec.fiber,
                height: rc.height,
                label: rec.label.clone(),
                vertex_ids: rc.vertex_ids.clone(),
            })
            .collect::<Vec<_>>();
        let edges = run.graph.edges().iter().map(|e| SceneEdge { a: e.a, b: e.b, kind: e.kind }).collect::<Vec<_>>();
        let stats = SceneStats {
            chamber_count: chambers.len(),
            vertex_count: vertices.len(),
            edge_count: edges.len(),
            max_distance_from_base: run.graph.max_distance_from_base(),
        };
        SceneDocument {
            schema_version: SCHEMA_VERSION,
            spec: SceneSpec {
                family: run.spec.family(),
                p: run.spec.p(),
                radius: run.options.radius,
                layout: SceneLayout {
                    height_step: layout.height_step,
                    radial_step: layout.radial_step,
                    embed_center: layout.embed_center,
                },
            },
            vertices,
            chambers,
            edges,
            center: run.realization.center,
            stats,
        }
    }

    pub fn to_bytes(&self, format: SceneFormat) -> Result<Vec<u8>> {
        match format {
            SceneFormat::Json => self.to_json(),
            SceneFormat::Obj => Ok(self.to_obj().into_bytes()),
        }
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut out = serde_json::to_vec_pretty(self)?;
        out.push(b'\n');
        Ok(out)
    }

    /// Parses and validates a JSON scene.
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let doc: SceneDocument = serde_json::from_slice(bytes)?;
        doc.validate()?;
        Ok(doc)
    }

    /// `v` lines for vertices, then per chamber a comment with its id and an
    /// `l` (segments) or `f` (triangles) element. With an embedded centre,
    /// each segment also gets a triangle fanned from the centre.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# building {} p={} radius={}: {} vertices, {} chambers, {} edges",
            self.spec.family,
            self.spec.p,
            self.spec.radius,
            self.stats.vertex_count,
            self.stats.chamber_count,
            self.stats.edge_count
        );
        for v in &self.vertices {
            let [x, y, z] = v.pos;
            let _ = writeln!(out, "v {x} {y} {z}");
        }
        for c in &self.chambers {
            let _ = writeln!(out, "# chamber {} word {:?} fiber {}", c.id, c.word, c.fiber);
            let ids: Vec<String> = c.vertex_ids.iter().map(|v| (v + 1).to_string()).collect();
            let element = if ids.len() == 2 { "l" } else { "f" };
            let _ = writeln!(out, "{element} {}", ids.join(" "));
            if let (Some(center), 2) = (self.center, ids.len()) {
                let _ = writeln!(out, "f {} {}", center + 1, ids.join(" "));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Scene(msg));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("unsupported schema_version {}", self.schema_version));
        }
        let family = self.spec.family;
        let rank = family.rank();
        let dim = family.matrix_dim();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return bad(format!("vertices[{i}].id is {}", v.id));
            }
            if v.cotype > rank || (v.cotype == rank && self.center != Some(i)) {
                return bad(format!("vertices[{i}].cotype {} out of range", v.cotype));
            }
            if v.pos.iter().any(|x| !x.is_finite()) {
                return bad(format!("vertices[{i}].pos is not finite"));
            }
        }
        if let Some(c) = self.center {
            if c >= self.vertices.len() {
                return bad(format!("center {c} is not a vertex"));
            }
        }
        for (i, c) in self.chambers.iter().enumerate() {
            if c.id != i {
                return bad(format!("chambers[{i}].id is {}", c.id));
            }
            if c.vertex_ids.len() != rank {
                return bad(format!("chambers[{i}].vertex_ids has {} entries, expected {rank}", c.vertex_ids.len()));
            }
            if let Some(v) = c.vertex_ids.iter().find(|&&v| v >= self.vertices.len()) {
                return bad(format!("chambers[{i}].vertex_ids references missing vertex {v}"));
            }
            if c.label.len() != dim * dim {
                return bad(format!("chambers[{i}].label has {} entries, expected {}", c.label.len(), dim * dim));
            }
            if let Some(entry) = c.label.iter().find(|x| !self.canonical_entry(x)) {
                return bad(format!("chambers[{i}].label entry {entry:?} is not canonical"));
            }
            if c.word.iter().any(|&s| s >= rank) {
                return bad(format!("chambers[{i}].word has a type out of range"));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.a >= e.b || e.b >= self.chambers.len() || e.kind >= rank {
                return bad(format!("edges[{i}] = ({}, {}, {}) is invalid", e.a, e.b, e.kind));
            }
            if i > 0 && (self.edges[i - 1].a, self.edges[i - 1].b) >= (e.a, e.b) {
                return bad(format!("edges[{i}] is out of order or duplicated"));
            }
        }
        let graph = self.graph()?;
        let expected = SceneStats {
            chamber_count: self.chambers.len(),
            vertex_count: self.vertices.len(),
            edge_count: self.edges.len(),
            max_distance_from_base: graph.max_distance_from_base(),
        };
        if expected != self.stats {
            return bad(format!("stats {:?} disagree with contents {:?}", self.stats, expected));
        }
        Ok(())
    }

    fn canonical_entry(&self, entry: &str) -> bool {
        match self.spec.family.kind() {
            Kind::Affine => entry.parse::<Rational>().is_ok_and(|q| q.to_string() == entry),
            Kind::Spherical => entry.parse::<u32>().is_ok_and(|r| r < self.spec.p && r.to_string() == entry),
        }
    }

    /// The typed chamber graph encoded by the edge list; the base chamber is
    /// the one with the empty word.
    pub fn graph(&self) -> Result<ChamberGraph> {
        let base = self.chambers.iter().position(|c| c.word.is_empty()).unwrap_or(0);
        let edges = self.edges.iter().map(|e| Edge { a: e.a, b: e.b, kind: e.kind }).collect();
        ChamberGraph::from_edges(self.chambers.len(), edges, base)
    }
}
