//! Chambers of Tits buildings of small rank: spherical buildings of
//! `GL_3(F_p)` and `GL_4(F_p)`, and balls in the affine buildings of
//! `SL_2(Q)` and `SL_3(Q)` with the `p`-adic valuation.
//!
//! Chambers are cosets `g B`, labelled by canonical representatives `b n`.
//! Adjacency is read off the Bruhat cell of `g^-1 h`, and the resulting
//! chamber graph is realized in 3D by folding each chamber onto the
//! fundamental chamber of the Coxeter complex.

pub mod bruhat;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod group;
pub mod labels;
pub mod matrix;
pub mod oracle;
pub mod pipeline;
pub mod scalar;
pub mod scene;
pub mod spec;
pub mod weyl;

pub use error::{AlgebraError, Error, Result};
pub use geometry::{Layout, Realization};
pub use graph::{ChamberGraph, Edge, Gallery, PairMode};
pub use group::{AffineGroup, BnPair, NeighborType, SphericalGroup};
pub use labels::ChamberLabel;
pub use matrix::Matrix;
pub use pipeline::{generate, GenerateOptions, Generated};
pub use scalar::{nu_p, PrimeField, PrimeFieldElement, Rational, Scalar, Valuation};
pub use scene::{SceneDocument, SceneFormat};
pub use spec::{BuildingSpec, Family, Kind};
pub use weyl::{Limits, WeylElement, WeylSignature};
