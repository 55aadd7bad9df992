use std::collections::{BTreeSet, HashMap};

use buildings::geometry::{base_geometry, footprint, Point};
use buildings::weyl::{enumerate_weyl, word_to_matrix};
use buildings::{
    generate, AffineGroup, BnPair, BuildingSpec, Family, GenerateOptions, Generated, Kind, Layout, Limits, SphericalGroup,
};

fn run(family: Family, p: u32, radius: usize) -> Generated {
    generate(BuildingSpec::new(family, p).unwrap(), &GenerateOptions::with_radius(radius)).unwrap()
}

fn max_dev(a: &[Point], b: &[Point]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn footprints_do_not_depend_on_the_reduced_word() {
    fn check<G: BnPair>(g: &G, max_len: usize) {
        let model = base_geometry(g.spec().family());
        let rank = g.spec().rank();
        let elements = enumerate_weyl(g, max_len, &Limits::default()).unwrap();
        let by_sig: HashMap<_, _> = elements.iter().map(|w| (w.signature.clone(), w)).collect();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for len in 1..=max_len {
            layer = layer.iter().flat_map(|w| (0..rank).map(move |i| [w.as_slice(), &[i]].concat())).collect();
            for word in &layer {
                let sig = g.signature(&word_to_matrix(g, word).unwrap()).unwrap();
                let w = by_sig[&sig];
                if w.length == len {
                    assert!(max_dev(&footprint(word, &model), &footprint(&w.word, &model)) < 1e-9, "{word:?} vs {:?}", w.word);
                }
            }
        }
    }
    check(&AffineGroup::new(BuildingSpec::new(Family::AffineA2, 2).unwrap()).unwrap(), 5);
    check(&AffineGroup::new(BuildingSpec::new(Family::AffineA1, 2).unwrap()).unwrap(), 5);
    check(&SphericalGroup::new(BuildingSpec::new(Family::SphericalA3, 2).unwrap()).unwrap(), 6);
    check(&SphericalGroup::new(BuildingSpec::new(Family::SphericalA2, 2).unwrap()).unwrap(), 3);
}

#[test]
fn chambers_carry_one_vertex_of_each_cotype() {
    for (family, p, d) in [(Family::SphericalA2, 2, 3), (Family::SphericalA3, 2, 6), (Family::AffineA2, 3, 2), (Family::AffineA1, 2, 3)] {
        let g = run(family, p, d);
        let r = &g.realization;
        for c in &r.chambers {
            let cotypes: Vec<usize> = c.vertex_ids.iter().map(|&v| r.vertices[v].cotype).collect();
            assert_eq!(cotypes, (0..family.rank()).collect::<Vec<_>>());
        }
        // shared walls: the two chambers of an edge of type i share exactly
        // the vertices of the other cotypes
        for e in g.graph.edges() {
            let (a, b) = (&r.chambers[e.a].vertex_ids, &r.chambers[e.b].vertex_ids);
            for k in 0..family.rank() {
                assert_eq!(a[k] == b[k], k != e.kind, "{family} edge {e:?}");
            }
        }
    }
}

#[test]
fn vertex_counts() {
    assert_eq!(run(Family::SphericalA2, 2, 3).realization.vertices.len(), 14);
    assert_eq!(run(Family::SphericalA3, 2, 6).realization.vertices.len(), 65);
    let gl4 = run(Family::SphericalA3, 2, 6);
    let mut by_cotype = [0; 3];
    for v in &gl4.realization.vertices {
        by_cotype[v.cotype] += 1;
    }
    assert_eq!(by_cotype, [15, 35, 15]);
    // the tree: every vertex of a ball in the A1 building is a panel
    assert_eq!(run(Family::AffineA1, 3, 2).realization.vertices.len(), 26);
}

#[test]
fn heights_place_vertices() {
    let layout = Layout::default();
    for (family, p, d) in [(Family::SphericalA2, 3, 3), (Family::AffineA2, 2, 3)] {
        let g = run(family, p, d);
        for v in &g.realization.vertices {
            let expected = match family.kind() {
                Kind::Affine => v.footprint + Point::new(0.0, 0.0, v.height as f64 * layout.height_step),
                Kind::Spherical => v.footprint * (1.0 + v.height as f64 * layout.radial_step),
            };
            assert!((v.position - expected).norm() < 1e-12);
        }
        assert_eq!(g.realization.height_ties, 0);
    }
}

#[test]
fn embedded_center_only_for_sph_a2() {
    let spec = BuildingSpec::new(Family::SphericalA2, 2).unwrap();
    let mut options = GenerateOptions::with_radius(3);
    options.layout.embed_center = true;
    let g = generate(spec, &options).unwrap();
    let center = g.realization.center.unwrap();
    assert_eq!(g.realization.vertices.len(), 15);
    assert_eq!(g.realization.vertices[center].position, Point::zeros());
    let other = BuildingSpec::new(Family::AffineA2, 2).unwrap();
    assert!(generate(other, &options).is_err());
}

#[test]
fn apartment_vertices_are_distinct_points() {
    let g = run(Family::AffineA2, 2, 3);
    let mut seen: BTreeSet<(i64, i64)> = BTreeSet::new();
    for v in &g.realization.vertices {
        if v.height == 0 {
            let key = ((v.footprint.x * 1e6).round() as i64, (v.footprint.y * 1e6).round() as i64);
            assert!(seen.insert(key), "two height-0 vertices at {:?}", v.footprint);
        }
    }
}
