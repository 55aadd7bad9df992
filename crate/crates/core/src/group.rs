//! Groups with a BN-pair: the spherical `GL_n(F_p)` with its upper triangular
//! Borel subgroup, and `SL_n(Q)` with the p-adic Iwahori subgroup.

use crate::bruhat::{adjacent_transposition, rank_rule_permutation, Bound, ValuationTable};
use crate::error::{AlgebraError, Result};
use crate::labels;
use crate::matrix::Matrix;
use crate::scalar::{PrimeField, PrimeFieldElement, Rational, Scalar};
use crate::spec::{BuildingSpec, Family, Kind};
use crate::weyl::{WeylElement, WeylSignature};

/// Relative position of two chambers `gB`, `hB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborType {
    Equal,
    /// `g^-1 h` lies in `B s_i B`.
    Adjacent(usize),
    NotAdjacent,
}

/// A concrete group `G` with subgroups `B` and `N` and an ordered set of
/// simple reflections.
pub trait BnPair: Send + Sync {
    type Scalar: Scalar;

    fn spec(&self) -> BuildingSpec;
    fn field(&self) -> <Self::Scalar as Scalar>::Field;
    fn simple_reflections(&self) -> &[Matrix<Self::Scalar>];
    fn is_in_b(&self, g: &Matrix<Self::Scalar>) -> bool;

    /// For `m` outside `B`: the index `i` with `m` in `B s_i B`, if any.
    fn reflection_cell(&self, m: &Matrix<Self::Scalar>) -> Option<usize>;

    /// Canonical form of the coset `nT` of a monomial matrix.
    fn signature(&self, n: &Matrix<Self::Scalar>) -> Result<WeylSignature, AlgebraError>;

    /// Elements `b` of `B` such that the cosets `b n B` are exactly the
    /// chambers in `B n B`, identity first.
    fn coset_representatives(&self, w: &WeylElement<Self::Scalar>) -> Result<Vec<Matrix<Self::Scalar>>>;

    fn identity(&self) -> Matrix<Self::Scalar> {
        Matrix::identity(self.spec().matrix_dim(), self.field())
    }

    fn classify(&self, m: &Matrix<Self::Scalar>) -> NeighborType {
        if self.is_in_b(m) {
            NeighborType::Equal
        } else {
            self.reflection_cell(m).map_or(NeighborType::NotAdjacent, NeighborType::Adjacent)
        }
    }

    fn neighbor_type(&self, g: &Matrix<Self::Scalar>, h: &Matrix<Self::Scalar>) -> Result<NeighborType, AlgebraError> {
        let m = g.inverse()?.multiply(h)?;
        Ok(self.classify(&m))
    }
}

/// `GL_n(F_p)`, `n = 3, 4`, with `B` the invertible upper triangular matrices.
#[derive(Debug, Clone)]
pub struct SphericalGroup {
    spec: BuildingSpec,
    reflections: Vec<Matrix<PrimeFieldElement>>,
}

impl SphericalGroup {
    pub fn new(spec: BuildingSpec) -> Result<Self> {
        if spec.kind() != Kind::Spherical {
            return Err(crate::Error::Unsupported(format!("{} is not a spherical family", spec.family())));
        }
        let n = spec.matrix_dim();
        let field = PrimeField(spec.p());
        let reflections = (0..spec.rank())
            .map(|i| {
                let perm = adjacent_transposition(n, i);
                Matrix::from_fn(n, |r, c| {
                    if perm[r] == c { PrimeFieldElement::one(field) } else { PrimeFieldElement::zero(field) }
                })
            })
            .collect();
        Ok(SphericalGroup { spec, reflections })
    }

    /// Bruhat permutation of `g` by the rank rule.
    pub fn bruhat_permutation(&self, g: &Matrix<PrimeFieldElement>) -> Option<Vec<usize>> {
        rank_rule_permutation(g)
    }
}

impl BnPair for SphericalGroup {
    type Scalar = PrimeFieldElement;

    fn spec(&self) -> BuildingSpec {
        self.spec
    }

    fn field(&self) -> PrimeField {
        PrimeField(self.spec.p())
    }

    fn simple_reflections(&self) -> &[Matrix<PrimeFieldElement>] {
        &self.reflections
    }

    fn is_in_b(&self, g: &Matrix<PrimeFieldElement>) -> bool {
        let n = g.dim();
        (0..n).all(|i| {
            !g.get(i, i).is_zero() && (0..i).all(|j| g.get(i, j).is_zero())
        })
    }

    fn reflection_cell(&self, m: &Matrix<PrimeFieldElement>) -> Option<usize> {
        let perm = rank_rule_permutation(m)?;
        let n = m.dim();
        (0..self.spec.rank()).find(|&i| perm == adjacent_transposition(n, i))
    }

    fn signature(&self, n: &Matrix<PrimeFieldElement>) -> Result<WeylSignature, AlgebraError> {
        let perm = n.monomial_support().ok_or(AlgebraError::NotMonomial)?;
        Ok(WeylSignature::spherical(perm))
    }

    fn coset_representatives(&self, w: &WeylElement<PrimeFieldElement>) -> Result<Vec<Matrix<PrimeFieldElement>>> {
        Ok(labels::schubert_representatives(self, w))
    }
}

/// `SL_n(Q)`, `n = 2, 3`, with `B` the p-adic Iwahori subgroup.
///
/// The simple reflections `s_0, s_1` of `SL_3` are the permutation matrices
/// of determinant `-1`; every label and every `g^-1 h` therefore has
/// determinant a p-adic unit, and the Iwahori quotient of that group is the
/// same chamber set as for `SL_3`.
#[derive(Debug, Clone)]
pub struct AffineGroup {
    spec: BuildingSpec,
    reflections: Vec<Matrix<Rational>>,
    borel: ValuationTable,
    cells: Vec<ValuationTable>,
}

impl AffineGroup {
    pub fn new(spec: BuildingSpec) -> Result<Self> {
        let p = spec.p() as i64;
        let q = Rational::integer;
        let inv_p = || Rational::new(-1, p).expect("p > 0");
        let square = |rows: Vec<Vec<Rational>>| Matrix::from_rows(rows).expect("square");
        let (reflections, cells) = match spec.family() {
            Family::AffineA1 => (
                vec![
                    square(vec![vec![q(0), q(1)], vec![q(-1), q(0)]]),
                    square(vec![vec![q(0), inv_p()], vec![q(p), q(0)]]),
                ],
                affine_a1_cells(),
            ),
            Family::AffineA2 => (
                vec![
                    square(vec![vec![q(0), q(1), q(0)], vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)]]),
                    square(vec![vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)], vec![q(0), q(1), q(0)]]),
                    square(vec![vec![q(0), q(0), inv_p()], vec![q(0), q(1), q(0)], vec![q(p), q(0), q(0)]]),
                ],
                affine_a2_cells(),
            ),
            other => return Err(crate::Error::Unsupported(format!("{other} is not an affine family"))),
        };
        Ok(AffineGroup { spec, reflections, borel: ValuationTable::iwahori(spec.matrix_dim()), cells })
    }

    pub fn p(&self) -> u32 {
        self.spec.p()
    }

    /// The valuation table of `B s_i B`.
    pub fn cell_table(&self, i: usize) -> &ValuationTable {
        &self.cells[i]
    }

    /// The filtration matrix of `B`: an element of `B` whose entries have the
    /// smallest valuations `B` allows.
    pub fn filtration_matrix(&self) -> Matrix<Rational> {
        let p = self.spec.p() as i64;
        let values: Vec<i64> = match self.spec.family() {
            Family::AffineA1 => vec![1, 1, p, p - 1],
            _ => vec![1, 1, 1, p, p - 1, 1, p, p, p - 1],
        };
        Matrix::from_i64(self.spec.matrix_dim(), &values, ()).expect("square")
    }
}

use Bound::{AtLeast as Ge, Exactly as Ex};

fn affine_a2_cells() -> Vec<ValuationTable> {
    vec![
        ValuationTable::new(vec![
            vec![Ge(0), Ge(0), Ge(0)],
            vec![Ex(0), Ge(0), Ge(0)],
            vec![Ge(1), Ge(1), Ex(0)],
        ]),
        ValuationTable::new(vec![
            vec![Ex(0), Ge(0), Ge(0)],
            vec![Ge(1), Ge(0), Ge(0)],
            vec![Ge(1), Ex(0), Ge(0)],
        ]),
        ValuationTable::new(vec![
            vec![Ge(0), Ge(0), Ex(-1)],
            vec![Ge(1), Ex(0), Ge(0)],
            vec![Ge(1), Ge(1), Ge(0)],
        ]),
    ]
}

// B s0 B is the preimage of the big cell of SL_2(F_p) inside SL_2(Z_(p));
// B s1 B is obtained from it by conjugating with diag(p, 1).
fn affine_a1_cells() -> Vec<ValuationTable> {
    vec![
        ValuationTable::new(vec![vec![Ge(0), Ge(0)], vec![Ex(0), Ge(0)]]),
        ValuationTable::new(vec![vec![Ge(0), Ex(-1)], vec![Ge(1), Ge(0)]]),
    ]
}

impl BnPair for AffineGroup {
    type Scalar = Rational;

    fn spec(&self) -> BuildingSpec {
        self.spec
    }

    fn field(&self) {}

    fn simple_reflections(&self) -> &[Matrix<Rational>] {
        &self.reflections
    }

    fn is_in_b(&self, g: &Matrix<Rational>) -> bool {
        self.borel.matches(g, self.spec.p())
    }

    fn reflection_cell(&self, m: &Matrix<Rational>) -> Option<usize> {
        let p = self.spec.p();
        self.cells.iter().position(|table| table.matches(m, p))
    }

    fn signature(&self, n: &Matrix<Rational>) -> Result<WeylSignature, AlgebraError> {
        let perm = n.monomial_support().ok_or(AlgebraError::NotMonomial)?;
        let p = self.spec.p();
        let valuations = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| n.get(i, j).valuation(p).finite().expect("nonzero entry"))
            .collect();
        Ok(WeylSignature::affine(perm, valuations))
    }

    fn coset_representatives(&self, w: &WeylElement<Rational>) -> Result<Vec<Matrix<Rational>>> {
        let profile = labels::filtration_profile(self, w)?;
        Ok(labels::filtration_representatives(self, &profile))
    }
}

/// Relative position of the chambers `gB` and `hB`, decided on `g^-1 h`.
pub fn bruhat_neighbor_type<G: BnPair>(
    group: &G,
    g: &Matrix<G::Scalar>,
    h: &Matrix<G::Scalar>,
) -> Result<NeighborType, AlgebraError> {
    group.neighbor_type(g, h)
}
