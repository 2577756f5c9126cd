//! Exact arithmetic foundation: coefficient domains, sparse multivariate
//! polynomials, exact linear algebra and resultants.

pub mod matrix;
pub mod modarith;
pub mod monomial;
pub mod poly;
pub mod resultant;
pub mod scalar;
pub mod univariate;

pub use matrix::{ExactMatrix, QMatrix};
pub use monomial::{monomials_of_degree, Monomial, VarSet};
pub use poly::{QPoly, SparsePolynomial};
pub use resultant::sylvester_resultant;
pub use scalar::{rat, rat_frac, Domain, Fq, FqField, Rational, Rationals};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("variable sets differ: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("coefficient domains differ: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial has degree zero in variable {var}")]
    NonPositiveDegree { var: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} divides 6")]
    CharacteristicDividesSix(u64),
    #[error("modulus {0} exceeds the word-sized field limit")]
    ModulusTooLarge(u64),
    #[error("extension degree {0} unsupported (expected 1 or 2)")]
    UnsupportedExtension(u32),
}
