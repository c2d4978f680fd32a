//! Exact constructions of Krall-type orthogonal polynomials from classical
//! families via D-operators, with verification of eigen-equations,
//! orthogonality and determinant identities over the rationals.

pub mod dops;
pub mod error;
pub mod families;
pub mod krall;
pub mod moments;
pub mod opalg;
pub mod poly;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use opalg::{DifferenceOperator, DifferentialOperator, Operator, OperatorKind};
pub use poly::Polynomial;
pub use rational::Rational;
