//! Enumeration of Weyl group elements `nT` by breadth-first search over
//! words in the simple reflections.

use std::collections::HashSet;

use crate::bruhat::inversions;
use crate::error::{Error, Result};
use crate::group::BnPair;
use crate::matrix::Matrix;
use crate::spec::Kind;

/// Canonical form of a coset `nT`.
///
/// `perm[row]` is the column of the nonzero entry in `row`. For affine
/// families `valuations[row]` is the p-adic valuation of that entry; right
/// multiplication by `T` only rescales columns by units, so both parts are
/// invariants of the coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylSignature {
    pub perm: Vec<usize>,
    pub valuations: Option<Vec<i64>>,
}

impl WeylSignature {
    pub fn spherical(perm: Vec<usize>) -> Self {
        WeylSignature { perm, valuations: None }
    }

    pub fn affine(perm: Vec<usize>, valuations: Vec<i64>) -> Self {
        WeylSignature { perm, valuations: Some(valuations) }
    }

    /// Number of inversions of the support permutation, which is the length
    /// for spherical families.
    pub fn inversions(&self) -> usize {
        inversions(&self.perm)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement<S> {
    pub matrix: Matrix<S>,
    pub signature: WeylSignature,
    pub length: usize,
    pub word: Vec<usize>,
}

impl<S> WeylElement<S> {
    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Resource guard for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest radius accepted for affine families, whose Weyl groups are
    /// infinite.
    pub max_affine_radius: usize,
    /// Optional cap for spherical families (finite groups).
    pub max_spherical_radius: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_affine_radius: 8, max_spherical_radius: None }
    }
}

impl Limits {
    pub fn check(&self, kind: Kind, radius: usize) -> Result<()> {
        let cap = match kind {
            Kind::Affine => Some(self.max_affine_radius),
            Kind::Spherical => self.max_spherical_radius,
        };
        match cap {
            Some(cap) if radius > cap => Err(Error::ResourceCap { what: "radius", requested: radius, cap }),
            _ => Ok(()),
        }
    }
}

/// Exact product of the simple reflections along `word`; the empty word
/// gives the identity.
pub fn word_to_matrix<G: BnPair>(group: &G, word: &[usize]) -> Result<Matrix<G::Scalar>> {
    let reflections = group.simple_reflections();
    word.iter().try_fold(group.identity(), |acc, &i| {
        let s = reflections
            .get(i)
            .ok_or_else(|| Error::Unsupported(format!("reflection index {i} out of range")))?;
        Ok(acc.multiply(s)?)
    })
}

/// All elements of `W = N/T` of length at most `radius`, sorted by length
/// and then by reduced word.
///
/// Each layer is expanded by right multiplication with every simple
/// reflection in index order, from parents sorted by word, so the stored
/// word of a new element is the lexicographically smallest `parent + [s]`.
pub fn enumerate_weyl<G: BnPair>(group: &G, radius: usize, limits: &Limits) -> Result<Vec<WeylElement<G::Scalar>>> {
    limits.check(group.spec().kind(), radius)?;
    let identity = group.identity();
    let mut seen = HashSet::new();
    let signature = group.signature(&identity)?;
    seen.insert(signature.clone());
    let mut all = vec![WeylElement { matrix: identity, signature, length: 0, word: Vec::new() }];
    let mut layer_start = 0;
    for length in 1..=radius {
        let mut next = Vec::new();
        for parent in &all[layer_start..] {
            for (i, s) in group.simple_reflections().iter().enumerate() {
                let matrix = parent.matrix.multiply(s)?;
                let signature = group.signature(&matrix)?;
                if seen.insert(signature.clone()) {
                    let mut word = parent.word.clone();
                    word.push(i);
                    next.push(WeylElement { matrix, signature, length, word });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.word.cmp(&b.word));
        layer_start = all.len();
        all.extend(next);
    }
    Ok(all)
}
