//! Exact arithmetic: rationals, number field towers, polynomials, matrices
//! and factorisation.

mod factor;
mod matrix;
mod poly;
mod rational;
mod tower;
mod zassenhaus;

pub use factor::{factor, roots_in_field, tower_extend};
pub use matrix::{projectively_equal, ExactMatrix};
pub use poly::Poly;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use tower::{height, FieldElement, FieldTower};
