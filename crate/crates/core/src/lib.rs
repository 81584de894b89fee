//! Exact computer algebra for the ideal of the dual tautological quotient
//! bundle on the Grassmannian G(2,n).
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: sparse rational polynomials, layered monomial orders,
//!   division with quotient traces, Buchberger machinery and syzygies.
//! - [`complexes`]: simplicial complexes, associahedra, joins, stellar
//!   subdivisions and Stanley-Reisner ideals.
//! - [`grassmann`]: the Pluecker/Pfaffian ideal `I_{2,n}`, the bundle ideal
//!   `J_n`, the circular and layered term orders and the initial-ideal check.
//! - [`syzygies`]: explicit syzygy families of `J_n` and their comparison with
//!   the syzygies extracted from S-pair reductions.
//! - [`cotangent`]: graded slices of `T^1(S_n/J_n)` by exact linear algebra.
//! - [`hull`]: exact lower hulls, unimodular triangulations, isomorphism
//!   search and reflexivity.

pub mod algebra;
pub mod complexes;
pub mod cotangent;
mod error;
pub mod grassmann;
pub mod hull;
pub mod linalg;
pub mod syzygies;

pub use error::{Error, Result};
