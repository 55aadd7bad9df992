use buildings::bruhat::affine_cell;
use buildings::group::bruhat_neighbor_type;
use buildings::{
    AffineGroup, BnPair, BuildingSpec, Family, Matrix, NeighborType, PrimeField, PrimeFieldElement, Rational, Scalar,
    SphericalGroup, Valuation,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..2000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

/// A p-adic unit `a / b` with `p` dividing neither.
fn unit(p: u32) -> impl Strategy<Value = Rational> {
    let p = p as i64;
    (1i64..60, 1i64..60, any::<bool>())
        .prop_filter("coprime to p", move |(a, b, _)| a % p != 0 && b % p != 0)
        .prop_map(|(a, b, neg)| Rational::new(if neg { -a } else { a }, b).unwrap())
}

fn p_integral(p: u32, min_val: u32) -> impl Strategy<Value = Rational> {
    let scale = Rational::integer((p as i64).pow(min_val));
    (-40i64..40, 0i64..30).prop_map(move |(a, b)| {
        let denom = 1 + b * p as i64;
        Rational::new(a, denom).unwrap().mul(&scale)
    })
}

/// A random element of the Iwahori subgroup: units on the diagonal, valuation
/// at least 0 above and at least 1 below.
fn iwahori(n: usize, p: u32) -> impl Strategy<Value = Matrix<Rational>> {
    let cells: Vec<BoxedStrategy<Rational>> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => unit(p).boxed(),
                std::cmp::Ordering::Less => p_integral(p, 0).boxed(),
                std::cmp::Ordering::Greater => p_integral(p, 1).boxed(),
            }
        })
        .collect();
    cells.prop_map(move |entries| Matrix::new(n, entries).unwrap())
}

fn borel_fp(n: usize, p: u32) -> impl Strategy<Value = Matrix<PrimeFieldElement>> {
    let field = PrimeField(p);
    proptest::collection::vec(0..p as i64, n * n).prop_map(move |raw| {
        Matrix::from_fn(n, |i, j| {
            let v = raw[i * n + j];
            match i.cmp(&j) {
                std::cmp::Ordering::Greater => PrimeFieldElement::zero(field),
                std::cmp::Ordering::Equal => PrimeFieldElement::from_i64(1 + v % (p as i64 - 1), field),
                std::cmp::Ordering::Less => PrimeFieldElement::from_i64(v, field),
            }
        })
    })
}

fn affine(family: Family, p: u32) -> AffineGroup {
    AffineGroup::new(BuildingSpec::new(family, p).unwrap()).unwrap()
}

fn spherical(family: Family, p: u32) -> SphericalGroup {
    SphericalGroup::new(BuildingSpec::new(family, p).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn rational_strings_round_trip(q in rational()) {
        let s = q.to_string();
        let back: Rational = s.parse().unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn valuation_is_additive_and_ultrametric(a in nonzero_rational(), b in nonzero_rational(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let (va, vb) = (a.valuation(p).finite().unwrap(), b.valuation(p).finite().unwrap());
        prop_assert_eq!(a.mul(&b).valuation(p), Valuation::Finite(va + vb));
        let sum = a.add(&b).valuation(p);
        prop_assert!(sum >= Valuation::Finite(va.min(vb)));
        if va != vb {
            prop_assert_eq!(sum, Valuation::Finite(va.min(vb)));
        }
    }

    #[test]
    fn product_valuations_bounded_by_terms(
        a in proptest::collection::vec(rational(), 9),
        b in proptest::collection::vec(rational(), 9),
    ) {
        let p = 3;
        let (a, b) = (Matrix::new(3, a).unwrap(), Matrix::new(3, b).unwrap());
        let pattern = a.multiply(&b).unwrap().valuation_pattern(p);
        for (i, row) in pattern.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let bound = (0..3).map(|k| a.get(i, k).mul(b.get(k, j)).valuation(p)).min().unwrap();
                prop_assert!(*v >= bound);
            }
        }
    }

    #[test]
    fn signature_ignores_torus(units in proptest::collection::vec(unit(3), 3), word in proptest::collection::vec(0usize..3, 0..6)) {
        let g = affine(Family::AffineA2, 3);
        let n = buildings::weyl::word_to_matrix(&g, &word).unwrap();
        let t = Matrix::diagonal(units);
        prop_assert_eq!(g.signature(&n.multiply(&t).unwrap()).unwrap(), g.signature(&n).unwrap());
    }

    #[test]
    fn spherical_signature_ignores_torus(d in proptest::collection::vec(1i64..5, 4), word in proptest::collection::vec(0usize..3, 0..8)) {
        let g = spherical(Family::SphericalA3, 5);
        let n = buildings::weyl::word_to_matrix(&g, &word).unwrap();
        let t = Matrix::diagonal(d.into_iter().map(|x| PrimeFieldElement::from_i64(x, PrimeField(5))).collect());
        prop_assert_eq!(g.signature(&n.multiply(&t).unwrap()).unwrap(), g.signature(&n).unwrap());
    }

    #[test]
    fn affine_a2_double_cosets_of_reflections(b1 in iwahori(3, 2), b2 in iwahori(3, 2), i in 0usize..3) {
        let g = affine(Family::AffineA2, 2);
        let s = &g.simple_reflections()[i];
        let m = &(&b1 * s) * &b2;
        prop_assert_eq!(bruhat_neighbor_type(&g, &g.identity(), &m).unwrap(), NeighborType::Adjacent(i));
        prop_assert_eq!(affine_cell(&m, 2), affine_cell(s, 2));
        prop_assert!(g.is_in_b(&b1.multiply(&b2).unwrap()));
        prop_assert_eq!(g.classify(&b1), NeighborType::Equal);
    }

    #[test]
    fn affine_a2_p3_double_cosets(b1 in iwahori(3, 3), b2 in iwahori(3, 3), i in 0usize..3) {
        let g = affine(Family::AffineA2, 3);
        let m = &(&b1 * &g.simple_reflections()[i]) * &b2;
        prop_assert_eq!(g.classify(&m), NeighborType::Adjacent(i));
    }

    #[test]
    fn affine_a1_double_cosets(b1 in iwahori(2, 3), b2 in iwahori(2, 3), i in 0usize..2) {
        let g = affine(Family::AffineA1, 3);
        let s = &g.simple_reflections()[i];
        let m = &(&b1 * s) * &b2;
        prop_assert_eq!(g.classify(&m), NeighborType::Adjacent(i));
        prop_assert_eq!(affine_cell(&m, 3), affine_cell(s, 3));
    }

    #[test]
    fn spherical_double_cosets(b1 in borel_fp(4, 3), b2 in borel_fp(4, 3), i in 0usize..3) {
        let g = spherical(Family::SphericalA3, 3);
        let m = &(&b1 * &g.simple_reflections()[i]) * &b2;
        prop_assert_eq!(bruhat_neighbor_type(&g, &g.identity(), &m).unwrap(), NeighborType::Adjacent(i));
        prop_assert_eq!(g.classify(&b1), NeighborType::Equal);
    }

    #[test]
    fn longer_cells_are_not_adjacent(b1 in iwahori(3, 2), b2 in iwahori(3, 2), word in prop::sample::select(vec![vec![0usize, 1], vec![2, 0], vec![1, 2, 1], vec![0, 2]])) {
        let g = affine(Family::AffineA2, 2);
        let n = buildings::weyl::word_to_matrix(&g, &word).unwrap();
        let m = &(&b1 * &n) * &b2;
        prop_assert_eq!(g.classify(&m), NeighborType::NotAdjacent);
    }

    #[test]
    fn inverse_is_two_sided(b in iwahori(3, 5)) {
        let inv = b.inverse().unwrap();
        let one = Matrix::<Rational>::identity(3, ());
        prop_assert_eq!(b.multiply(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.multiply(&b).unwrap(), one);
    }
}

#[test]
fn is_in_b_examples() {
    let g = affine(Family::AffineA2, 2);
    // 1/2 has valuation -1 above the diagonal, and the matrix is singular
    let bad = Matrix::parse_rows(&[&["1", "1/2", "0"], &["2", "1", "0"], &["0", "0", "1"]]).unwrap();
    assert!(!g.is_in_b(&bad));
    let good = Matrix::parse_rows(&[&["1", "1", "0"], &["2", "1", "0"], &["0", "0", "1"]]).unwrap();
    assert!(g.is_in_b(&good));
    assert!(g.is_in_b(&g.identity()));
}

#[test]
fn s2_squares_to_a_torus_element() {
    let g = affine(Family::AffineA2, 2);
    let s2 = &g.simple_reflections()[2];
    let square = s2.multiply(s2).unwrap();
    let expected = Matrix::from_i64(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1], ()).unwrap();
    assert_eq!(square, expected);
    assert_eq!(s2.inverse().unwrap(), s2.multiply(&expected).unwrap());
    assert_eq!(s2.inverse().unwrap(), Matrix::parse_rows(&[&["0", "0", "1/2"], &["0", "1", "0"], &["-2", "0", "0"]]).unwrap());
}
