//! Exact bivariate Laurent polynomials over the integers and rational
//! functions whose denominators are products of factors `1 - X^a Y^b`.
//!
//! The variables stand for `X = p` and `Y = p^{-s}`, so a term `p^{u - vs}`
//! is written `X^u Y^v`.

mod gaussian;
mod laurent;
mod rational;
mod render;

pub use gaussian::{gaussian_binomial, gaussian_multinomial};
pub use laurent::{Exponent, LaurentPoly};
pub use rational::{GeometricFactor, ProductRationalFunction};
pub use render::{poly_to_json_terms, poly_to_latex, RationalFunctionJson};
