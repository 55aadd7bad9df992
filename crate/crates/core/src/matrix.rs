//! Small dense square matrices over an exact [`Scalar`].

use std::fmt;
use std::ops::Mul;

use crate::error::AlgebraError;
use crate::scalar::{Rational, Scalar, Valuation};

/// Square `n x n` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(n: usize, entries: Vec<S>) -> Result<Self, AlgebraError> {
        if entries.len() != n * n {
            return Err(AlgebraError::DimensionMismatch { left: n, right: isqrt(entries.len()) });
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(AlgebraError::DimensionMismatch { left: n, right: bad.len() });
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { n, entries }
    }

    pub fn from_i64(n: usize, values: &[i64], field: S::Field) -> Result<Self, AlgebraError> {
        Matrix::new(n, values.iter().map(|&v| S::from_i64(v, field)).collect())
    }

    pub fn identity(n: usize, field: S::Field) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { S::one(field) } else { S::zero(field) })
    }

    /// Identity with `value` placed at off-diagonal position `(i, j)`.
    pub fn elementary(n: usize, i: usize, j: usize, value: S) -> Self {
        debug_assert_ne!(i, j);
        let field = value.field();
        let mut m = Matrix::identity(n, field);
        m.entries[i * n + j] = value;
        m
    }

    pub fn diagonal(values: Vec<S>) -> Self {
        let n = values.len();
        let field = values[0].field();
        let mut m = Matrix::identity(n, field);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> S::Field {
        self.entries[0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch { left: self.n, right: other.n });
        }
        let n = self.n;
        let field = self.field();
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let mut acc = S::zero(field);
                for t in 0..n {
                    let (a, b) = (self.get(i, t), other.get(t, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        Ok(Matrix { n, entries })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let n = self.n;
        let field = self.field();
        let mut a = self.clone();
        let mut inv = Matrix::identity(n, field);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(AlgebraError::Singular)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let scale = a.get(col, col).inv().expect("nonzero pivot");
            a.scale_row(col, &scale);
            inv.scale_row(col, &scale);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).neg();
                    a.add_row_multiple(r, col, &factor);
                    inv.add_row_multiple(r, col, &factor);
                }
            }
        }
        Ok(inv)
    }

    /// `w * a * w^-1`.
    pub fn conjugate(w: &Self, a: &Self) -> Result<Self, AlgebraError> {
        w.multiply(a)?.multiply(&w.inverse()?)
    }

    pub fn determinant(&self) -> S {
        let n = self.n;
        let field = self.field();
        let mut a = self.clone();
        let mut det = S::one(field);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return S::zero(field);
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let p_inv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).mul(&p_inv).neg();
                    a.add_row_multiple(r, col, &factor);
                }
            }
        }
        det
    }

    /// Rank of the submatrix on rows `rows.start..` and columns `..cols.end`
    /// given as half-open ranges.
    pub fn submatrix_rank(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> usize {
        let mut block: Vec<Vec<S>> = rows
            .map(|i| cols.clone().map(|j| self.get(i, j).clone()).collect())
            .collect();
        let width = block.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            let Some(pivot) = (rank..block.len()).find(|&r| !block[r][col].is_zero()) else {
                continue;
            };
            block.swap(rank, pivot);
            let p_inv = block[rank][col].inv().expect("nonzero pivot");
            for r in rank + 1..block.len() {
                if block[r][col].is_zero() {
                    continue;
                }
                let factor = block[r][col].mul(&p_inv);
                let pivot_row = block[rank].clone();
                for (target, x) in block[r][col..width].iter_mut().zip(&pivot_row[col..width]) {
                    *target = target.sub(&factor.mul(x));
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Column index of the single nonzero entry in each row, if the matrix is
    /// monomial.
    pub fn monomial_support(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut support = Vec::with_capacity(n);
        let mut used = vec![false; n];
        for i in 0..n {
            let mut nonzero = (0..n).filter(|&j| !self.get(i, j).is_zero());
            let j = nonzero.next()?;
            if nonzero.next().is_some() || used[j] {
                return None;
            }
            used[j] = true;
            support.push(j);
        }
        Some(support)
    }

    /// Row-major entries as strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(ToString::to_string).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.entries.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    fn scale_row(&mut self, row: usize, factor: &S) {
        for j in 0..self.n {
            let k = row * self.n + j;
            self.entries[k] = self.entries[k].mul(factor);
        }
    }

    /// `row[target] += factor * row[source]`
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &S) {
        for j in 0..self.n {
            let s = &self.entries[source * self.n + j];
            if s.is_zero() {
                continue;
            }
            let delta = factor.mul(s);
            let k = target * self.n + j;
            self.entries[k] = self.entries[k].add(&delta);
        }
    }
}

impl Matrix<Rational> {
    /// Entrywise p-adic valuations, row by row.
    pub fn valuation_pattern(&self, p: u32) -> Vec<Vec<Valuation>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).valuation(p)).collect())
            .collect()
    }

    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self, AlgebraError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<Rational>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows)
    }
}

/// Panics on dimension mismatch; use [`Matrix::multiply`] for a checked
/// product.
impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: Self) -> Matrix<S> {
        self.multiply(rhs).expect("matrix dimensions agree")
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.entries[i * self.n + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n.max(1))).finish()
    }
}

fn isqrt(len: usize) -> usize {
    (len as f64).sqrt() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, PrimeFieldElement};

    fn q(rows: &[&[&str]]) -> Matrix<Rational> {
        Matrix::parse_rows(rows).unwrap()
    }

    #[test]
    fn inverse_of_affine_reflection() {
        // s2 for p = 2; s2^2 = diag(-1, 1, -1) by hand, so s2^-1 = s2 diag(-1, 1, -1).
        let s2 = q(&[&["0", "0", "-1/2"], &["0", "1", "0"], &["2", "0", "0"]]);
        let square = &s2 * &s2;
        let t = Matrix::diagonal(vec![Rational::integer(-1), Rational::integer(1), Rational::integer(-1)]);
        assert_eq!(square, t);
        let expected = q(&[&["0", "0", "1/2"], &["0", "1", "0"], &["-2", "0", "0"]]);
        assert_eq!(s2.inverse().unwrap(), expected);
        assert_eq!(expected, &s2 * &t);
        assert_eq!(s2.determinant(), Rational::integer(1));
    }

    #[test]
    fn conjugation_by_identity() {
        let a = q(&[&["1", "3/4", "0"], &["2", "5", "-1"], &["0", "7", "1/9"]]);
        let e = Matrix::identity(3, ());
        assert_eq!(Matrix::conjugate(&e, &a).unwrap(), a);
    }

    #[test]
    fn filtration_matrix_valuations() {
        let p = 5;
        let f = Matrix::<Rational>::from_i64(3, &[1, 1, 1, 5, 4, 1, 5, 5, 4], ()).unwrap();
        let fin = |v| Valuation::Finite(v);
        assert_eq!(
            f.valuation_pattern(p),
            vec![vec![fin(0), fin(0), fin(0)], vec![fin(1), fin(0), fin(0)], vec![fin(1), fin(1), fin(0)]]
        );
    }

    #[test]
    fn singular_and_mismatch() {
        let a = q(&[&["1", "1/2", "0"], &["2", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(a.determinant(), Rational::integer(0));
        assert_eq!(a.inverse(), Err(AlgebraError::Singular));
        let b = Matrix::<Rational>::identity(2, ());
        assert!(matches!(a.multiply(&b), Err(AlgebraError::DimensionMismatch { .. })));
        assert!(Matrix::<Rational>::new(3, vec![Rational::integer(1); 4]).is_err());
    }

    #[test]
    fn prime_field_rank_and_inverse() {
        let f = PrimeField(2);
        let m = Matrix::<PrimeFieldElement>::from_i64(3, &[1, 1, 0, 0, 1, 1, 1, 0, 1], f).unwrap();
        // rows sum to zero mod 2
        assert_eq!(m.submatrix_rank(0..3, 0..3), 2);
        assert!(m.inverse().is_err());
        let g = Matrix::<PrimeFieldElement>::from_i64(3, &[0, 1, 1, 1, 0, 1, 0, 0, 1], f).unwrap();
        let prod = &g * &g.inverse().unwrap();
        assert_eq!(prod, Matrix::identity(3, f));
        assert_eq!(g.submatrix_rank(1..3, 0..1), 1);
        assert_eq!(g.submatrix_rank(2..3, 0..2), 0);
    }

    #[test]
    fn monomial_support() {
        let s2 = q(&[&["0", "0", "-1/3"], &["0", "1", "0"], &["3", "0", "0"]]);
        assert_eq!(s2.monomial_support(), Some(vec![2, 1, 0]));
        let u = q(&[&["1", "1", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(u.monomial_support(), None);
        assert!(Matrix::<Rational>::identity(3, ()).is_diagonal());
    }
}
