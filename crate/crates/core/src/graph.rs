//! Typed chamber graph and minimal galleries.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{BnPair, NeighborType};
use crate::labels::ChamberLabel;
use crate::weyl::WeylSignature;

/// Undirected edge `a < b` whose type is the index of the simple reflection
/// of the shared wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: usize,
}

/// Which chamber pairs are tested for adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairMode {
    /// Only pairs whose Weyl elements are equal or differ by one simple
    /// reflection on the right. Adjacent chambers always satisfy this, since
    /// retraction onto the standard apartment from `B` sends them to equal
    /// or adjacent chambers.
    #[default]
    Pruned,
    /// Every unordered pair.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberGraph {
    chamber_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    base: usize,
}

/// A minimal gallery: its length, the types of the walls crossed, and the
/// chambers visited (both endpoints included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gallery {
    pub distance: usize,
    pub word: Vec<usize>,
    pub chambers: Vec<usize>,
}

pub fn build_chamber_graph<G: BnPair>(
    group: &G,
    labels: &[ChamberLabel<G::Scalar>],
    mode: PairMode,
) -> Result<ChamberGraph> {
    let n = labels.len();
    let candidates: Vec<Vec<usize>> = match mode {
        PairMode::Exhaustive => (0..n).map(|a| (a + 1..n).collect()).collect(),
        PairMode::Pruned => pruned_candidates(group, labels)?,
    };
    let found: Vec<Vec<Edge>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let inv = labels[a].matrix.inverse()?;
            let mut edges = Vec::new();
            for &b in &candidates[a] {
                let m = inv.multiply(&labels[b].matrix)?;
                match group.classify(&m) {
                    NeighborType::Equal => return Err(Error::DuplicateCoset { a, b }),
                    NeighborType::Adjacent(kind) => edges.push(Edge { a, b, kind }),
                    NeighborType::NotAdjacent => {}
                }
            }
            Ok(edges)
        })
        .collect::<Result<_>>()?;
    let base = labels.iter().position(|l| l.word().is_empty()).unwrap_or(0);
    ChamberGraph::from_edges(n, found.into_iter().flatten().collect(), base)
}

fn pruned_candidates<G: BnPair>(group: &G, labels: &[ChamberLabel<G::Scalar>]) -> Result<Vec<Vec<usize>>> {
    let mut fibers: HashMap<&WeylSignature, Vec<usize>> = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        fibers.entry(&l.weyl.signature).or_default().push(i);
    }
    // Weyl neighbours of each distinct element: itself and w s_i.
    let mut related: HashMap<&WeylSignature, Vec<WeylSignature>> = HashMap::new();
    for l in labels {
        if related.contains_key(&l.weyl.signature) {
            continue;
        }
        let mut sigs = vec![l.weyl.signature.clone()];
        for s in group.simple_reflections() {
            sigs.push(group.signature(&l.weyl.matrix.multiply(s)?)?);
        }
        related.insert(&l.weyl.signature, sigs);
    }
    Ok((0..labels.len())
        .map(|a| {
            let mut out: BTreeSet<usize> = BTreeSet::new();
            for sig in &related[&labels[a].weyl.signature] {
                if let Some(fiber) = fibers.get(sig) {
                    out.extend(fiber.iter().copied().filter(|&b| b > a));
                }
            }
            out.into_iter().collect()
        })
        .collect())
}

impl ChamberGraph {
    /// Assembles a graph from typed edges, rejecting loops, duplicate pairs
    /// and out-of-range endpoints. Edges are normalised to `a < b` and sorted.
    pub fn from_edges(chamber_count: usize, edges: Vec<Edge>, base: usize) -> Result<Self> {
        if chamber_count > 0 && base >= chamber_count {
            return Err(Error::NoSuchChamber(base));
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| if e.a <= e.b { e } else { Edge { a: e.b, b: e.a, kind: e.kind } })
            .collect();
        edges.sort();
        let mut adjacency = vec![Vec::new(); chamber_count];
        for (k, e) in edges.iter().enumerate() {
            if e.b >= chamber_count {
                return Err(Error::NoSuchChamber(e.b));
            }
            if e.a == e.b {
                return Err(Error::Scene(format!("loop at chamber {}", e.a)));
            }
            if k > 0 && (edges[k - 1].a, edges[k - 1].b) == (e.a, e.b) {
                return Err(Error::Scene(format!("duplicate edge {}-{}", e.a, e.b)));
            }
            adjacency[e.a].push((e.b, e.kind));
            adjacency[e.b].push((e.a, e.kind));
        }
        for list in &mut adjacency {
            list.sort();
        }
        Ok(ChamberGraph { chamber_count, edges, adjacency, base })
    }

    pub fn chamber_count(&self) -> usize {
        self.chamber_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// `(neighbour, type)` pairs sorted by neighbour.
    pub fn neighbors(&self, chamber: usize) -> &[(usize, usize)] {
        &self.adjacency[chamber]
    }

    pub fn degree(&self, chamber: usize) -> usize {
        self.adjacency[chamber].len()
    }

    /// Breadth-first distances; `None` for chambers in another component.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.chamber_count];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued chambers have a distance");
            for &(v, _) in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn max_distance_from_base(&self) -> usize {
        if self.chamber_count == 0 {
            return 0;
        }
        self.distances_from(self.base).into_iter().flatten().max().unwrap_or(0)
    }

    /// Largest finite distance over all pairs.
    pub fn diameter(&self) -> usize {
        (0..self.chamber_count)
            .into_par_iter()
            .map(|s| self.distances_from(s).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.chamber_count == 0 || self.distances_from(self.base).iter().all(Option::is_some)
    }

    /// A minimal gallery from `from` to `to` whose type word is
    /// lexicographically least among all minimal galleries.
    pub fn shortest_gallery(&self, from: usize, to: usize) -> Result<Gallery> {
        for c in [from, to] {
            if c >= self.chamber_count {
                return Err(Error::NoSuchChamber(c));
            }
        }
        let to_target = self.distances_from(to);
        let distance = to_target[from].ok_or(Error::Unreachable { from, to })?;
        let mut frontier = vec![from];
        let mut layers: Vec<Vec<(usize, usize)>> = Vec::with_capacity(distance);
        let mut word = Vec::with_capacity(distance);
        for step in 0..distance {
            let remaining = distance - step - 1;
            let mut steps: Vec<(usize, usize, usize)> = frontier
                .iter()
                .flat_map(|&u| self.adjacency[u].iter().map(move |&(v, t)| (u, v, t)))
                .filter(|&(_, v, _)| to_target[v] == Some(remaining))
                .collect();
            let kind = steps.iter().map(|&(_, _, t)| t).min().expect("a step towards the target exists");
            steps.retain(|&(_, _, t)| t == kind);
            // (chamber, parent) for every chamber reachable with the least type
            let mut next: Vec<(usize, usize)> = steps.into_iter().map(|(u, v, _)| (v, u)).collect();
            next.sort();
            next.dedup_by_key(|&mut (v, _)| v);
            frontier = next.iter().map(|&(v, _)| v).collect();
            layers.push(next);
            word.push(kind);
        }
        let mut chambers = vec![to];
        for layer in layers.iter().rev() {
            let current = *chambers.last().expect("nonempty");
            let &(_, parent) = layer.iter().find(|&&(v, _)| v == current).expect("chamber reached in this layer");
            chambers.push(parent);
        }
        chambers.reverse();
        Ok(Gallery { distance, word, chambers })
    }
}
