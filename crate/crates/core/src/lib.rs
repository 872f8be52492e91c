//! Exact coordinate calculus for Jacobi pairs, contact forms and the first
//! jet algebroid of a trivialized line bundle.
//!
//! Every scalar is a rational function with rational coefficients in the
//! coordinates of a single [`Chart`], kept in canonical form, so all
//! identities are decided exactly.

pub mod catalog;
pub mod contact;
pub mod error;
pub mod extcalc;
pub mod jacobi;
pub mod jetalg;
pub mod residual;
pub mod symcore;

pub use error::{Error, Result};
pub use symcore::{Chart, Expr, Rational};
