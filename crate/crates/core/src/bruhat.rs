//! Bruhat cell classification.
//!
//! Permutations are stored as `perm[row] = column` of the nonzero entry in
//! that row of the monomial matrix they index, the same convention as
//! [`WeylSignature`](crate::weyl::WeylSignature).

use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar, Valuation};

/// Bruhat permutation of an invertible matrix over a field, relative to the
/// upper triangular Borel subgroup, via the submatrix rank rule.
///
/// For `g` in `B w B`, the rank of the block of rows `i..n` and columns
/// `0..=j` equals the number of columns `k <= j` whose 1 in the permutation
/// matrix of `w` sits in a row `>= i`. Those ranks are invariant under row
/// operations from below and column operations from the left, so they
/// determine `w`.
///
/// Returns `None` for a singular matrix.
pub fn rank_rule_permutation<S: Scalar>(g: &Matrix<S>) -> Option<Vec<usize>> {
    let n = g.dim();
    // rank[i][j+1] = rank of rows i.., columns ..=j ; rank[i][0] = 0
    let mut rank = vec![vec![0usize; n + 1]; n + 1];
    for (i, row) in rank.iter_mut().enumerate().take(n) {
        for j in 0..n {
            row[j + 1] = g.submatrix_rank(i..n, 0..j + 1);
        }
    }
    let mut perm = vec![usize::MAX; n];
    for j in 0..n {
        // largest row i with a jump in column j
        let row = (0..n).rev().find(|&i| rank[i][j + 1] - rank[i][j] == 1)?;
        // the jump must hold for every row above it and for none below
        let consistent = (0..n).all(|i| rank[i][j + 1] - rank[i][j] == usize::from(i <= row));
        if !consistent || perm[row] != usize::MAX {
            return None;
        }
        perm[row] = j;
    }
    Some(perm)
}

/// Permutation swapping `i` and `i + 1`.
pub fn adjacent_transposition(n: usize, i: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, i + 1);
    perm
}

pub fn inversions(perm: &[usize]) -> usize {
    let n = perm.len();
    (0..n).map(|i| (i + 1..n).filter(|&j| perm[i] > perm[j]).count()).sum()
}

/// Membership in `B s_0 B` or `B s_1 B` for `GL_3` over a prime field, read
/// directly off the entries:
///
/// ```text
/// B s0 B: [* * *]     B s1 B: [u * *]
///         [u * *]             [0 * *]
///         [0 0 u]             [0 u *]
/// ```
///
/// with `u` nonzero. Used to cross-check the rank rule.
pub fn hardcoded_gl3_cell<S: Scalar>(g: &Matrix<S>) -> Option<usize> {
    assert_eq!(g.dim(), 3, "hard-coded cell patterns are for 3x3 matrices");
    let z = |i: usize, j: usize| g.get(i, j).is_zero();
    let invertible = !g.determinant().is_zero();
    if invertible && !z(1, 0) && z(2, 0) && z(2, 1) && !z(2, 2) {
        Some(0)
    } else if invertible && !z(0, 0) && z(1, 0) && z(2, 0) && !z(2, 1) {
        Some(1)
    } else {
        None
    }
}

/// Two-sided elimination to a monomial matrix using only operations from the
/// Borel/Iwahori subgroup.
///
/// `weight` gives the valuation of an entry (`None` for zero). At each step
/// the pivot is the entry of minimal weight, in the leftmost column among
/// those, and the bottommost row within that column. With that choice every
/// row operation `row_l += c row_i` and column operation `col_k += c col_j`
/// needed to clear the pivot's row and column has `weight(c) >= 0` above the
/// diagonal and `>= 1` below it, so it multiplies by an element of `B`.
///
/// Returns the pivot permutation and the pivot weights (row by row), or
/// `None` for a singular matrix.
pub fn eliminate<S: Scalar>(g: &Matrix<S>, weight: impl Fn(&S) -> Option<i64>) -> Option<(Vec<usize>, Vec<i64>)> {
    let n = g.dim();
    let mut m: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| g.get(i, j).clone()).collect()).collect();
    let mut row_free = vec![true; n];
    let mut col_free = vec![true; n];
    let mut perm = vec![0; n];
    let mut weights = vec![0; n];
    for _ in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for j in (0..n).filter(|&j| col_free[j]) {
            for i in (0..n).filter(|&i| row_free[i]) {
                let Some(w) = weight(&m[i][j]) else { continue };
                // key (w, j, -i)
                let better = match best {
                    None => true,
                    Some((bw, bj, bi)) => (w, j) < (bw, bj) || ((w, j) == (bw, bj) && i > bi),
                };
                if better {
                    best = Some((w, j, i));
                }
            }
        }
        let (w, j, i) = best?;
        let pivot_inv = m[i][j].inv().expect("nonzero pivot");
        for k in (0..n).filter(|&k| k != j && col_free[k]) {
            if m[i][k].is_zero() {
                continue;
            }
            let c = m[i][k].mul(&pivot_inv).neg();
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    let delta = c.mul(&row[j]);
                    row[k] = row[k].add(&delta);
                }
            }
        }
        for l in (0..n).filter(|&l| l != i && row_free[l]) {
            if m[l][j].is_zero() {
                continue;
            }
            let c = m[l][j].mul(&pivot_inv).neg();
            let pivot_row = m[i].clone();
            for (target, x) in m[l].iter_mut().zip(&pivot_row) {
                if !x.is_zero() {
                    *target = target.add(&c.mul(x));
                }
            }
        }
        row_free[i] = false;
        col_free[j] = false;
        perm[i] = j;
        weights[i] = w;
    }
    Some((perm, weights))
}

/// Affine Bruhat cell of `g` relative to the p-adic Iwahori subgroup: the
/// support permutation and entry valuations of the monomial `w` with
/// `g in B w B`.
pub fn affine_cell(g: &Matrix<Rational>, p: u32) -> Option<(Vec<usize>, Vec<i64>)> {
    eliminate(g, |x| x.valuation(p).finite())
}

/// Bruhat permutation over a field by elimination; independent of the rank
/// rule.
pub fn field_cell<S: Scalar>(g: &Matrix<S>) -> Option<Vec<usize>> {
    eliminate(g, |x| (!x.is_zero()).then_some(0)).map(|(perm, _)| perm)
}

/// Every entry's valuation against a table of constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtLeast(i64),
    Exactly(i64),
}

impl Bound {
    pub fn admits(self, v: Valuation) -> bool {
        match (self, v) {
            (Bound::AtLeast(_), Valuation::Infinity) => true,
            (Bound::AtLeast(k), Valuation::Finite(x)) => x >= k,
            (Bound::Exactly(k), v) => v == Valuation::Finite(k),
        }
    }
}

/// Entrywise valuation pattern of a subset of `GL_n(Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationTable {
    bounds: Vec<Vec<Bound>>,
}

impl ValuationTable {
    pub fn new(bounds: Vec<Vec<Bound>>) -> Self {
        ValuationTable { bounds }
    }

    /// The Iwahori pattern: `= 0` on the diagonal, `>= 0` above, `>= 1` below.
    pub fn iwahori(n: usize) -> Self {
        let bounds = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => Bound::Exactly(0),
                        std::cmp::Ordering::Less => Bound::AtLeast(0),
                        std::cmp::Ordering::Greater => Bound::AtLeast(1),
                    })
                    .collect()
            })
            .collect();
        ValuationTable { bounds }
    }

    pub fn matches(&self, g: &Matrix<Rational>, p: u32) -> bool {
        let n = g.dim();
        n == self.bounds.len()
            && (0..n).all(|i| (0..n).all(|j| self.bounds[i][j].admits(g.get(i, j).valuation(p))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, PrimeFieldElement};

    fn fp(values: &[i64], p: u32) -> Matrix<PrimeFieldElement> {
        let n = (values.len() as f64).sqrt() as usize;
        Matrix::from_i64(n, values, PrimeField(p)).unwrap()
    }

    #[test]
    fn rank_rule_on_permutations() {
        let s0 = fp(&[0, 1, 0, 1, 0, 0, 0, 0, 1], 2);
        let s1 = fp(&[1, 0, 0, 0, 0, 1, 0, 1, 0], 2);
        assert_eq!(rank_rule_permutation(&s0), Some(vec![1, 0, 2]));
        assert_eq!(rank_rule_permutation(&s1), Some(vec![0, 2, 1]));
        assert_eq!(rank_rule_permutation(&Matrix::<PrimeFieldElement>::identity(3, PrimeField(3))), Some(vec![0, 1, 2]));
        let cycle = fp(&[0, 0, 1, 1, 0, 0, 0, 1, 0], 2);
        assert_eq!(rank_rule_permutation(&cycle), cycle.monomial_support());
        assert_eq!(rank_rule_permutation(&fp(&[1, 1, 1, 1], 2)), None);
    }

    #[test]
    fn rank_rule_ignores_borel_factors() {
        let p = 3;
        let b1 = fp(&[2, 1, 2, 0, 1, 1, 0, 0, 2], p);
        let b2 = fp(&[1, 2, 0, 0, 2, 1, 0, 0, 1], p);
        let w = fp(&[0, 0, 1, 1, 0, 0, 0, 1, 0], p);
        let g = &(&b1 * &w) * &b2;
        assert_eq!(rank_rule_permutation(&g), w.monomial_support());
        assert_eq!(field_cell(&g), w.monomial_support());
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(inversions(&[0, 1, 2]), 0);
        assert_eq!(inversions(&[2, 1, 0]), 3);
        assert_eq!(inversions(&[3, 2, 1, 0]), 6);
        assert_eq!(adjacent_transposition(4, 2), vec![0, 1, 3, 2]);
    }

    #[test]
    fn affine_cell_of_reflection_and_iwahori() {
        let p = 2;
        let s2 = Matrix::parse_rows(&[&["0", "0", "-1/2"], &["0", "1", "0"], &["2", "0", "0"]]).unwrap();
        assert_eq!(affine_cell(&s2, p), Some((vec![2, 1, 0], vec![-1, 0, 1])));
        let b = Matrix::parse_rows(&[&["3", "1/3", "5"], &["2", "1", "7"], &["4/3", "6", "-1"]]).unwrap();
        assert!(ValuationTable::iwahori(3).matches(&b, p));
        assert_eq!(affine_cell(&b, p), Some((vec![0, 1, 2], vec![0, 0, 0])));
        let g = &(&b * &s2) * &b;
        assert_eq!(affine_cell(&g, p), Some((vec![2, 1, 0], vec![-1, 0, 1])));
    }

    #[test]
    fn bounds() {
        assert!(Bound::AtLeast(1).admits(Valuation::Infinity));
        assert!(!Bound::Exactly(0).admits(Valuation::Infinity));
        assert!(Bound::Exactly(-1).admits(Valuation::Finite(-1)));
        assert!(!Bound::AtLeast(0).admits(Valuation::Finite(-1)));
    }
}
