//! Congruence towers of finitely generated Kleinian groups over number fields.
//!
//! Given generator matrices in `SL_2` of a number field, the crate builds the
//! congruence filtration at a rational prime `p`, computes the orders of the
//! finite quotients, word and geodesic systole bounds, Weil heights with
//! certified inequalities, `H_1(Gamma_i, F_p)` via Reidemeister-Schreier, and
//! the conditional free-rank certificates that tie these quantities together.
//!
//! The runnable programs in `examples/` walk through each capability.

pub mod arith;
pub mod catalog;
pub mod congruence;
pub mod error;
pub mod geometry;
pub mod group;
pub mod heights;
pub mod homology;
pub mod number_field;
pub mod report;

pub use error::{Error, Result};
