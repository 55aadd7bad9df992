use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::scalar::is_prime;

/// The four supported building families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `GL_3` over `F_p`; chambers are edges of a bipartite incidence graph.
    #[serde(rename = "sph-a2")]
    SphericalA2,
    /// `GL_4` over `F_p`; chambers are triangles on a sphere.
    #[serde(rename = "sph-a3")]
    SphericalA3,
    /// `SL_2(Q)` with the p-adic Iwahori subgroup; a `(p+1)`-regular tree.
    #[serde(rename = "aff-a1")]
    AffineA1,
    /// `SL_3(Q)` with the p-adic Iwahori subgroup.
    #[serde(rename = "aff-a2")]
    AffineA2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Spherical,
    Affine,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SphericalA2, Family::SphericalA3, Family::AffineA1, Family::AffineA2];

    pub fn name(self) -> &'static str {
        match self {
            Family::SphericalA2 => "sph-a2",
            Family::SphericalA3 => "sph-a3",
            Family::AffineA1 => "aff-a1",
            Family::AffineA2 => "aff-a2",
        }
    }

    pub fn matrix_dim(self) -> usize {
        match self {
            Family::SphericalA2 => 3,
            Family::SphericalA3 => 4,
            Family::AffineA1 => 2,
            Family::AffineA2 => 3,
        }
    }

    /// Number of simple reflections, which is also the number of vertices of
    /// a chamber.
    pub fn rank(self) -> usize {
        match self {
            Family::SphericalA2 | Family::AffineA1 => 2,
            Family::SphericalA3 | Family::AffineA2 => 3,
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Family::SphericalA2 | Family::SphericalA3 => Kind::Spherical,
            Family::AffineA1 | Family::AffineA2 => Kind::Affine,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| AlgebraError::UnknownFamily(s.to_owned()))
    }
}

/// A building family together with its prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BuildingSpec {
    family: Family,
    p: u32,
}

impl BuildingSpec {
    pub fn new(family: Family, p: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(BuildingSpec { family, p })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn matrix_dim(&self) -> usize {
        self.family.matrix_dim()
    }

    pub fn rank(&self) -> usize {
        self.family.rank()
    }

    pub fn kind(&self) -> Kind {
        self.family.kind()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_fields() {
        let dims: Vec<_> = Family::ALL.iter().map(|f| (f.matrix_dim(), f.rank())).collect();
        assert_eq!(dims, vec![(3, 2), (4, 3), (2, 2), (3, 3)]);
        assert_eq!(Family::AffineA1.kind(), Kind::Affine);
        assert_eq!(Family::SphericalA3.kind(), Kind::Spherical);
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("sph-b2".parse::<Family>().is_err());
    }

    #[test]
    fn rejects_composite_prime() {
        assert_eq!(BuildingSpec::new(Family::AffineA2, 4), Err(AlgebraError::NotPrime(4)));
        assert_eq!(BuildingSpec::new(Family::AffineA2, 1), Err(AlgebraError::NotPrime(1)));
        assert!(BuildingSpec::new(Family::SphericalA3, 2).is_ok());
    }
}
