//! Exact principal-grading data for the rigid connection `d + (N + E t) dt/t` of a simple group.
//!
//! For a simple type and a dominant weight `lambda`, the irregular Hodge
//! numbers of the connection `d + (N + E t) dt/t` attached to the
//! representation `V_lambda` are the dimensions of the eigenspaces of the
//! principal grading `2 rho^vee` on `V_lambda`. This crate computes them from
//! scratch (root data, Freudenthal multiplicities), cross-checks them against
//! explicit matrix realizations of the principal nilpotent, compares them with
//! Betti numbers of minuscule flag varieties, and certifies flatness of the
//! two-variable connection `A dt + B dz` built from `N`, `E` and `rho`.
//!
//! Everything is exact: big integers and big rationals, no floating point.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod character;
pub mod chevalley;
pub mod connection;
pub mod error;
pub mod grading;
pub mod kkp;
pub mod laurent;
pub mod matrix;
pub mod rootdatum;

pub use error::{Error, Result};

/// Exact rational numbers used throughout.
pub type Rational = num_rational::BigRational;
