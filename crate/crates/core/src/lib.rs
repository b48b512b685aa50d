//! Exact computation of local normal zeta functions of Heisenberg groups
//! `H(R)` over compact discrete valuation rings `R` of characteristic zero.
//!
//! The zeta function depends only on the ramification index `e` and the
//! inertia degree `f` of `R`, and is returned as a bivariate rational
//! function `W(X, Y)` with `X = p` and `Y = p^{-s}`. Closed forms are built
//! from permutation statistics on `S_n` ([`coxeter`]) using exact sparse
//! arithmetic ([`polyrat`]), and every coefficient can be cross-checked
//! against a brute-force ideal count in the Heisenberg Lie ring over a
//! concrete realization of `R` ([`local_ring`], [`oracle`]).

pub mod coxeter;
pub mod error;
pub mod local_ring;
pub mod oracle;
pub mod polyrat;
pub mod residue;
pub mod zeta_formulas;

pub use error::{Error, Result};
