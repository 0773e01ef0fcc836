//! Exact arithmetic substrate: rationals, torus polynomials, polynomials in
//! `u`, and dense rational linear algebra. Nothing in here rounds.

pub mod matrix;
pub mod rational;
pub mod torus_poly;
pub mod upoly;

pub use matrix::{RationalMatrix, Solution};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use torus_poly::{monomials, Exponent, TorusPoly};
pub use upoly::UPoly;
