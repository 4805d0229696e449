//! Exact arithmetic for Kummer-coboundary descent tables of torsion points
//! on elliptic curves over rational function fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`] — characteristic-aware coefficient fields (Q and prime
//!   fields), dense polynomials, rational functions, integer and
//!   polynomial factorization.
//! * [`grammar`] — the canonical text format for polynomials and rational
//!   functions in the parameter `la`.
//! * [`kummer`] — power classes: elements of k^x / (k^x)^n in canonical
//!   factored form, with the group law and specialization.
//! * [`curves`] — Weierstrass curves, invariants, and the group law over
//!   any exact field.
//! * [`function_field`] — elements a(x) + b(x) y of a curve's function
//!   field, norms, lines, and evaluation.
//! * [`miller`] — Miller's algorithm, the normalization unit, and descent
//!   tables delta(mP).
//! * [`fixtures`] / [`families`] — the reference data for the torsion
//!   families and the registry that builds and verifies them.
//! * [`global_fields`] — places of Q, Hilbert symbols, specialization at
//!   rational parameter values, and the constructive parameter chooser.

pub mod curves;
pub mod error;
pub mod exact;
pub mod families;
pub mod fixtures;
pub mod function_field;
pub mod global_fields;
pub mod grammar;
pub mod kummer;
pub mod miller;

pub use error::{Error, Result};
