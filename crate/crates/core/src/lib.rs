//! Exact computation of Hom-Lie structures on finite-dimensional Lie algebras.
//!
//! All arithmetic is exact, over the rationals or a prime field of odd
//! characteristic. Algorithms are generic over [`Field`]; the aliases below
//! name the concrete instantiations used throughout the tests and the CLI.

pub mod binhom;
pub mod error;
pub mod homspaces;
pub mod jordancheck;
pub mod liealg;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod spectral;
pub mod subspace;
pub mod suits;

pub use error::{Error, Result};
pub use homspaces::MapSpace;
pub use liealg::LieAlgebra;
pub use matrix::{Matrix, Rref};
pub use poly::Poly;
pub use scalar::{Field, FieldSpec, Fp, Rational};
pub use subspace::Subspace;

pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;
pub type Gf7 = Fp<7>;

pub type QMatrix = Matrix<Rational>;
pub type QPoly = Poly<Rational>;
