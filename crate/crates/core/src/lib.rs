//! Exact computations for graded 3-ary Hom algebras with a two-cycle
//! commutation factor: structure checks, representations, low-degree
//! cohomology, derivations, extensions and deformations.
//!
//! Everything is generic over a [`Scalar`] field; the aliases below fix
//! it to arbitrary-precision rationals.

pub mod algebra;
pub mod cohomology;
pub mod corpus;
pub mod deformation;
pub mod derivations;
pub mod error;
pub mod extensions;
pub mod grading;
pub mod linalg;
pub mod report;
pub mod representation;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
pub type Algebra = algebra::Algebra3<Rational>;
pub type Tensor = algebra::TriTensor<Rational>;
pub type RMatrix = linalg::Matrix<Rational>;
