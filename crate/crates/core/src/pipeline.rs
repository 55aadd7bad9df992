//! One generation run: labels, chamber graph and realization for a spec,
//! with the scalar kind erased.

use crate::error::Result;
use crate::geometry::{base_geometry, realize, Layout, Realization};
use crate::graph::{build_chamber_graph, ChamberGraph, PairMode};
use crate::group::{AffineGroup, BnPair, SphericalGroup};
use crate::labels::{enumerate_chambers, ChamberLabel};
use crate::scalar::Scalar;
use crate::spec::{BuildingSpec, Kind};
use crate::weyl::Limits;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerateOptions {
    pub radius: usize,
    pub layout: Layout,
    pub pair_mode: PairMode,
    pub limits: Limits,
}

impl GenerateOptions {
    pub fn with_radius(radius: usize) -> Self {
        GenerateOptions { radius, layout: Layout::default(), pair_mode: PairMode::default(), limits: Limits::default() }
    }
}

/// What the scene needs to know about a chamber label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberRecord {
    pub word: Vec<usize>,
    pub fiber: usize,
    /// Row-major canonical scalar strings of `b n`.
    pub label: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub spec: BuildingSpec,
    pub options: GenerateOptions,
    pub chambers: Vec<ChamberRecord>,
    pub graph: ChamberGraph,
    pub realization: Realization,
}

pub fn generate(spec: BuildingSpec, options: &GenerateOptions) -> Result<Generated> {
    match spec.kind() {
        Kind::Spherical => run(&SphericalGroup::new(spec)?, options),
        Kind::Affine => run(&AffineGroup::new(spec)?, options),
    }
}

fn run<G: BnPair>(group: &G, options: &GenerateOptions) -> Result<Generated> {
    let spec = group.spec();
    let labels = enumerate_chambers(group, options.radius, &options.limits)?;
    let graph = build_chamber_graph(group, &labels, options.pair_mode)?;
    let model = base_geometry(spec.family());
    let realization = realize(&graph, &labels, &model, &options.layout, options.radius)?;
    Ok(Generated { spec, options: *options, chambers: records(&labels), graph, realization })
}

fn records<S: Scalar>(labels: &[ChamberLabel<S>]) -> Vec<ChamberRecord> {
    labels
        .iter()
        .map(|l| ChamberRecord { word: l.word().to_vec(), fiber: l.fiber_index, label: l.matrix.to_strings() })
        .collect()
}
