//! Geometric realization: positions of chamber vertices in 3D.
//!
//! Every chamber `b n B` is placed over the footprint of `n`, obtained by
//! reflecting the base chamber in the walls named by the reduced word of `n`.
//! Chambers in the same fiber share a footprint and are separated by their
//! height, vertically for affine families and radially for spherical ones.
//!
//! Vertex `k` of a chamber is the one *not* on its wall of type `k`; this
//! index is its cotype.

use std::collections::HashMap;

use log::warn;
use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::graph::ChamberGraph;
use crate::labels::ChamberLabel;
use crate::spec::{Family, Kind};

pub type Point = Vector3<f64>;

/// Tolerance for merged vertices whose footprints must agree.
pub const IDENTIFICATION_TOLERANCE: f64 = 1e-6;

/// Orthogonal reflection `x -> x - 2 (n.x - c) n` in the hyperplane
/// `n.x = c`, `|n| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    normal: Point,
    offset: f64,
}

impl Reflection {
    pub fn new(normal: Point, through: Point) -> Self {
        let normal = normal.normalize();
        Reflection { normal, offset: normal.dot(&through) }
    }

    pub fn apply(&self, x: &Point) -> Point {
        x - 2.0 * (self.normal.dot(x) - self.offset) * self.normal
    }

    pub fn is_linear(&self) -> bool {
        self.offset.abs() < 1e-12
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wall {
    /// Base vertices lying on this wall.
    pub vertices: Vec<usize>,
    pub reflection: Reflection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionModel {
    pub family: Family,
    pub vertices: Vec<Point>,
    pub walls: Vec<Wall>,
}

impl ReflectionModel {
    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    /// Wall types containing base vertex `k`: all but `k`.
    pub fn cotype_walls(&self, k: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&i| i != k).collect()
    }
}

fn in_plane_normal(a: Point, b: Point) -> Point {
    let d = b - a;
    Vector3::new(-d.y, d.x, 0.0)
}

/// Base chamber and wall reflections for `family`.
pub fn base_geometry(family: Family) -> ReflectionModel {
    let h = 3f64.sqrt() / 2.0;
    let origin = Point::zeros();
    let (vertices, reflections): (Vec<Point>, Vec<Reflection>) = match family {
        Family::AffineA1 => {
            let v = vec![Point::new(1.0, 0.0, 0.0), origin];
            let r = vec![Reflection::new(Point::x(), v[1]), Reflection::new(Point::x(), v[0])];
            (v, r)
        }
        Family::AffineA2 => {
            // s0 and s1 pass through the origin vertex, s2 is the far side.
            let v = vec![Point::new(0.5, h, 0.0), Point::new(1.0, 0.0, 0.0), origin];
            let r = (0..3)
                .map(|i| {
                    let on: Vec<Point> = (0..3).filter(|&k| k != i).map(|k| v[k]).collect();
                    Reflection::new(in_plane_normal(on[0], on[1]), on[0])
                })
                .collect();
            (v, r)
        }
        Family::SphericalA2 => {
            let v = vec![Point::new(1.0, 0.0, 0.0), Point::new(0.5, h, 0.0)];
            let r = vec![
                Reflection::new(in_plane_normal(origin, v[1]), origin),
                Reflection::new(in_plane_normal(origin, v[0]), origin),
            ];
            (v, r)
        }
        Family::SphericalA3 => {
            // S4 permuting coordinates of the sum-zero hyperplane of R^4.
            let basis = [
                [1.0, -1.0, 0.0, 0.0].map(|x| x / 2f64.sqrt()),
                [1.0, 1.0, -2.0, 0.0].map(|x| x / 6f64.sqrt()),
                [1.0, 1.0, 1.0, -3.0].map(|x| x / 12f64.sqrt()),
            ];
            let project = |x: [f64; 4]| {
                let c = |b: &[f64; 4]| b.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<f64>();
                Point::new(c(&basis[0]), c(&basis[1]), c(&basis[2]))
            };
            let v = (1..=3)
                .map(|k| {
                    let weight: [f64; 4] = std::array::from_fn(|i| if i < k { 1.0 } else { 0.0 });
                    project(weight).normalize()
                })
                .collect();
            let r = (0..3)
                .map(|i| {
                    let mut root = [0.0; 4];
                    root[i] = 1.0;
                    root[i + 1] = -1.0;
                    Reflection::new(project(root), origin)
                })
                .collect();
            (v, r)
        }
    };
    let walls = reflections
        .into_iter()
        .enumerate()
        .map(|(i, reflection)| Wall { vertices: (0..vertices.len()).filter(|&k| k != i).collect(), reflection })
        .collect();
    ReflectionModel { family, vertices, walls }
}

/// Positions of the chamber `n B` for a word `s_{i1} ... s_{ir}` of `n`: the
/// composite `rho(s_i1) o ... o rho(s_ir)` applied to the base chamber, where
/// `rho(s_i)` reflects in the base wall of type `i`.
pub fn footprint(word: &[usize], model: &ReflectionModel) -> Vec<Point> {
    model
        .vertices
        .iter()
        .map(|v| word.iter().rev().fold(*v, |x, &i| model.walls[i].reflection.apply(&x)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layout {
    pub height_step: f64,
    pub radial_step: f64,
    /// Add a central vertex so the spherical `A2` building appears as the
    /// link of a vertex of the affine `A2` building.
    pub embed_center: bool,
}

impl Default for Layout {
    fn default() -> Self {
        Layout { height_step: 0.25, radial_step: 0.12, embed_center: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizedVertex {
    pub id: usize,
    pub footprint: Point,
    pub height: usize,
    pub position: Point,
    pub cotype: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedChamber {
    pub id: usize,
    /// Indexed by cotype.
    pub vertex_ids: Vec<usize>,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub vertices: Vec<RealizedVertex>,
    pub chambers: Vec<RealizedChamber>,
    pub radius: usize,
    /// Vertices whose nearest containing chambers disagreed on height.
    pub height_ties: usize,
    /// Id of the extra central vertex, when embedded.
    pub center: Option<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn realize<S>(
    graph: &ChamberGraph,
    labels: &[ChamberLabel<S>],
    model: &ReflectionModel,
    layout: &Layout,
    radius: usize,
) -> Result<Realization> {
    let rank = model.rank();
    let n = labels.len();
    let mut cache: HashMap<&[usize], Vec<Point>> = HashMap::new();
    let footprints: Vec<Vec<Point>> = labels
        .iter()
        .map(|l| cache.entry(l.word()).or_insert_with(|| footprint(l.word(), model)).clone())
        .collect();

    // slot c * rank + k is vertex k of chamber c
    let mut uf = UnionFind::new(n * rank);
    for e in graph.edges() {
        for k in (0..rank).filter(|&k| k != e.kind) {
            uf.union(e.a * rank + k, e.b * rank + k);
        }
    }

    let dist = graph.distances_from(graph.base());
    let mut ids: HashMap<usize, usize> = HashMap::new();
    // per vertex: (footprint, cotype, best (distance, height), tie flag)
    let mut merged: Vec<(Point, usize, (usize, usize), bool)> = Vec::new();
    let mut chambers = Vec::with_capacity(n);
    for (c, label) in labels.iter().enumerate() {
        let key = (dist[c].unwrap_or(usize::MAX), label.fiber_index);
        let mut vertex_ids = Vec::with_capacity(rank);
        for (k, &fp) in footprints[c].iter().enumerate() {
            let root = uf.find(c * rank + k);
            let id = *ids.entry(root).or_insert_with(|| {
                merged.push((fp, k, key, false));
                merged.len() - 1
            });
            let entry = &mut merged[id];
            let deviation = (entry.0 - fp).norm();
            if deviation > IDENTIFICATION_TOLERANCE {
                return Err(Error::IdentificationConflict { deviation });
            }
            if key.0 == entry.2 .0 && key.1 != entry.2 .1 {
                entry.3 = true;
            }
            if key < entry.2 {
                entry.2 = key;
            }
            vertex_ids.push(id);
        }
        chambers.push(RealizedChamber { id: c, vertex_ids, height: label.fiber_index });
    }

    let kind = model.family.kind();
    let place = |fp: &Point, height: usize| match kind {
        Kind::Affine => fp + Point::new(0.0, 0.0, height as f64 * layout.height_step),
        Kind::Spherical => fp * (1.0 + height as f64 * layout.radial_step),
    };
    let mut height_ties = 0;
    let mut vertices: Vec<RealizedVertex> = merged
        .into_iter()
        .enumerate()
        .map(|(id, (fp, cotype, (_, height), tie))| {
            if tie {
                height_ties += 1;
            }
            RealizedVertex { id, footprint: fp, height, position: place(&fp, height), cotype }
        })
        .collect();
    if height_ties > 0 {
        warn!("{height_ties} vertices have several nearest chambers of different heights; used the lowest");
    }

    let center = if layout.embed_center {
        if model.family != Family::SphericalA2 {
            return Err(Error::Unsupported("--embed-center applies to sph-a2 only".into()));
        }
        let id = vertices.len();
        vertices.push(RealizedVertex { id, footprint: Point::zeros(), height: 0, position: Point::zeros(), cotype: rank });
        Some(id)
    } else {
        None
    };

    Ok(Realization { vertices, chambers, radius, height_ties, center })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Point, b: &Point) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn reflections_are_involutions_fixing_their_walls() {
        for family in Family::ALL {
            let m = base_geometry(family);
            let probe = Point::new(0.3, -1.7, 0.4);
            for wall in &m.walls {
                let r = &wall.reflection;
                assert!(close(&r.apply(&r.apply(&probe)), &probe));
                for &k in &wall.vertices {
                    assert!(close(&r.apply(&m.vertices[k]), &m.vertices[k]), "{family}");
                }
            }
            for (i, wall) in m.walls.iter().enumerate() {
                assert!(!close(&wall.reflection.apply(&m.vertices[i]), &m.vertices[i]));
            }
        }
    }

    #[test]
    fn affine_a2_far_wall() {
        let m = base_geometry(Family::AffineA2);
        let apex = m.walls[2].reflection.apply(&Point::zeros());
        assert!(close(&apex, &Point::new(1.5, 3f64.sqrt() / 2.0, 0.0)));
        assert!(!m.walls[2].reflection.is_linear());
        assert!(m.walls[0].reflection.is_linear() && m.walls[1].reflection.is_linear());
    }

    #[test]
    fn spherical_vertices_on_unit_sphere() {
        for family in [Family::SphericalA2, Family::SphericalA3] {
            for v in &base_geometry(family).vertices {
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
        let m = base_geometry(Family::SphericalA2);
        assert!((m.vertices[0].dot(&m.vertices[1]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn braid_words_agree() {
        let m = base_geometry(Family::SphericalA3);
        let pairs: [(&[usize], &[usize]); 3] = [(&[0, 1, 0], &[1, 0, 1]), (&[0, 2], &[2, 0]), (&[1, 2, 1, 0], &[2, 1, 2, 0])];
        for (a, b) in pairs {
            let (fa, fb) = (footprint(a, &m), footprint(b, &m));
            assert!(fa.iter().zip(&fb).all(|(x, y)| close(x, y)));
        }
        let m = base_geometry(Family::AffineA2);
        let (fa, fb) = (footprint(&[0, 2, 0], &m), footprint(&[2, 0, 2], &m));
        assert!(fa.iter().zip(&fb).all(|(x, y)| close(x, y)));
    }

    #[test]
    fn empty_word_is_base() {
        let m = base_geometry(Family::AffineA1);
        assert_eq!(footprint(&[], &m), m.vertices);
        // the tree's apartment is the real line tiled by unit segments
        let f = footprint(&[1, 0], &m);
        assert!(close(&f[0], &Point::new(3.0, 0.0, 0.0)) || close(&f[1], &Point::new(3.0, 0.0, 0.0)));
    }
}
