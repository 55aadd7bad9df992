//! Chamber labels: canonical representatives `b n` of the cosets in `B n B / B`.
//!
//! For the affine families the representatives come from root-subgroup
//! quotients. Write `F` for the filtration matrix of `B` and `phi_B(i, j)` for
//! the valuations of its entries. Conjugating by `n` gives `phi_nB` for
//! `n B n^-1`, and the stabiliser `B ∩ n B n^-1` has entry bounds
//! `r(i, j) = max(phi_nB, phi_B)`. Each off-diagonal position then
//! contributes a factor `Z / p^e(i, j)` with `e = r - phi_B`, realised by the
//! elementary matrices `u_ij(c p^phi_B(i, j))`, `0 <= c < p^e`.
//!
//! For the spherical families the representatives are Schubert coordinates:
//! `u_ij(c)`, `c` in `F_p`, over the positions `i < j` inverted by `n`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{AffineGroup, BnPair, SphericalGroup};
use crate::matrix::Matrix;
use crate::scalar::{PrimeFieldElement, Rational, Scalar};
use crate::weyl::{enumerate_weyl, Limits, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationProfile {
    pub word: Vec<usize>,
    pub length: usize,
    pub phi_b: Vec<Vec<i64>>,
    pub phi_wb: Vec<Vec<i64>>,
    pub r: Vec<Vec<i64>>,
    pub e: Vec<Vec<i64>>,
}

impl FiltrationProfile {
    pub fn exponent_sum(&self) -> i64 {
        let n = self.e.len();
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| self.e[i][j]).sum()
    }
}

fn integer_valuations(m: &Matrix<Rational>, p: u32) -> Vec<Vec<i64>> {
    m.valuation_pattern(p)
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.finite().expect("filtration entries are nonzero")).collect())
        .collect()
}

pub fn filtration_profile(group: &AffineGroup, w: &WeylElement<Rational>) -> Result<FiltrationProfile> {
    let p = group.p();
    let f = group.filtration_matrix();
    let phi_b = integer_valuations(&f, p);
    let phi_wb = integer_valuations(&Matrix::conjugate(&w.matrix, &f)?, p);
    let n = phi_b.len();
    let r: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| phi_wb[i][j].max(phi_b[i][j])).collect()).collect();
    let e = (0..n).map(|i| (0..n).map(|j| r[i][j] - phi_b[i][j]).collect()).collect();
    let profile = FiltrationProfile { word: w.word.clone(), length: w.length, phi_b, phi_wb, r, e };
    let sum = profile.exponent_sum();
    if sum != w.length as i64 {
        return Err(Error::ProfileInconsistency { word: w.word.clone(), sum, length: w.length });
    }
    Ok(profile)
}

/// One factor set `{u_ij(v) : v in values}` of an ordered product.
struct Factor<S> {
    i: usize,
    j: usize,
    values: Vec<S>,
}

/// All products `u_1(v_1) u_2(v_2) ...` with the first factor varying
/// slowest; the all-zero choice (the identity) comes first.
fn ordered_products<S: Scalar>(identity: Matrix<S>, factors: &[Factor<S>]) -> Vec<Matrix<S>> {
    let n = identity.dim();
    let mut products = vec![identity];
    for factor in factors {
        let elementary: Vec<Matrix<S>> =
            factor.values.iter().map(|v| Matrix::elementary(n, factor.i, factor.j, v.clone())).collect();
        products = products
            .iter()
            .flat_map(|prefix| elementary.iter().map(move |u| if u.get(factor.i, factor.j).is_zero() {
                prefix.clone()
            } else {
                prefix * u
            }))
            .collect();
    }
    products
}

/// Representatives for an affine family, `p^length` in total.
pub fn filtration_representatives(group: &AffineGroup, profile: &FiltrationProfile) -> Vec<Matrix<Rational>> {
    let p = group.p();
    let n = profile.e.len();
    let factors: Vec<Factor<Rational>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && profile.e[i][j] > 0)
        .map(|(i, j)| {
            let step = Rational::prime_power(p, profile.phi_b[i][j]);
            let count = (p as u64).pow(profile.e[i][j] as u32);
            let values = (0..count).map(|c| Rational::integer(c as i64).mul(&step)).collect();
            Factor { i, j, values }
        })
        .collect();
    ordered_products(group.identity(), &factors)
}

/// Schubert-cell representatives for a spherical family: `u_ij(c)` over the
/// positions `i < j` with `perm[i] > perm[j]`, `p^length` in total.
pub fn schubert_representatives(group: &SphericalGroup, w: &WeylElement<PrimeFieldElement>) -> Vec<Matrix<PrimeFieldElement>> {
    let field = group.field();
    let perm = &w.signature.perm;
    let n = perm.len();
    let factors: Vec<Factor<PrimeFieldElement>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .map(|(i, j)| Factor { i, j, values: (0..field.0 as i64).map(|c| PrimeFieldElement::from_i64(c, field)).collect() })
        .collect();
    ordered_products(group.identity(), &factors)
}

/// A chamber `b n B`, with `b` from the representative list of `n`.
#[derive(Debug, Clone)]
pub struct ChamberLabel<S> {
    pub weyl: Arc<WeylElement<S>>,
    pub b: Matrix<S>,
    /// Position of `b` in the representative list; 0 means `b = 1`.
    pub fiber_index: usize,
    /// `b * n`
    pub matrix: Matrix<S>,
}

impl<S> ChamberLabel<S> {
    pub fn word(&self) -> &[usize] {
        &self.weyl.word
    }

    pub fn length(&self) -> usize {
        self.weyl.length
    }
}

/// Every chamber at distance at most `radius` from `B`, ordered by Weyl
/// element (length, then word) and then by fiber index.
pub fn enumerate_chambers<G: BnPair>(group: &G, radius: usize, limits: &Limits) -> Result<Vec<ChamberLabel<G::Scalar>>> {
    let weyl = enumerate_weyl(group, radius, limits)?;
    let per_element: Vec<Vec<ChamberLabel<G::Scalar>>> = weyl
        .into_par_iter()
        .map(|w| {
            let w = Arc::new(w);
            let reps = group.coset_representatives(&w)?;
            reps
                .into_iter()
                .enumerate()
                .map(|(fiber_index, b)| {
                    let matrix = b.multiply(&w.matrix)?;
                    Ok(ChamberLabel { weyl: Arc::clone(&w), b, fiber_index, matrix })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_element.into_iter().flatten().collect())
}
