//! Exact rational arithmetic and homogeneous trivariate polynomials.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and no operation ever rounds. Monomials are ordered graded
//! lexicographically with `x > y > z`, and that single order drives
//! normalization, printing and gcd normalization.

mod form;
mod gcd;
pub mod linalg;
mod matrix;
mod point;
mod rational;

pub use form::{jacobian_det, Form, Monomial, Var};
pub use gcd::{gcd, gcd3};
pub use matrix::Mat3;
pub use point::ProjPoint;
pub use rational::{format_rational, parse_rational, rat, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("cannot differentiate a form of degree 0")]
    ZeroDegree,
    #[error("all inputs are zero")]
    AllZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("operation needs a nonzero form")]
    ZeroForm,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}
