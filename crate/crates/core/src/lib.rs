//! Exact commutative algebra for gradient ideals of products of forms: Gröbner
//! bases, graded free resolutions, depth, and the checks built on them.

pub mod arrangement;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod planeclassify;
pub mod poly;
pub mod productforms;
pub mod random;
pub mod resolution;
pub mod scalar;

pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, IdealBasis};
pub use matrix::GradedMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, Ring};
pub use scalar::{Field, Scalar};
