//! Exact scalar and matrix arithmetic.
//!
//! The scalar type is [`Rational`], an arbitrary-precision reduced fraction
//! with positive denominator. [`RationalMatrix`] is a dense matrix over it
//! with exact Gaussian elimination: determinants, inverses and full solution
//! spaces of linear systems (inconsistent / unique / parametrized family).
//! The number-theory helpers certify perfect squares and enumerate two-square
//! decompositions; both are used by the Diophantine class search and the
//! nonexistence certificates.

mod matrix;
mod number;
mod rational;

pub use matrix::{solve_linear_system, LinearSolution, RationalMatrix};
pub use number::{is_perfect_square, rational_is_square, two_square_representations};
pub use rational::{
    is_integer, parse_rational, rational_from_integer, rational_to_string, sign, ExactError,
    Rational,
};
