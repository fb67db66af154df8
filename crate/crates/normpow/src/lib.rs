//! Derivatives of powers of the Euclidean norm.
//!
//! For a fixed self-adjoint positive definite operator `B`, the norm
//! `‖x‖ = ⟨Bx, x⟩^{1/2}` and the power function `f_q(x) = ‖x‖^q` have
//! remarkably explicit high-order derivatives:
//!
//! ```text
//! D^p f_q(x)[h]^p = ‖x‖^{q-p} g_{p,q}(τ_h(x)),    τ_h(x) = ⟨Bx, h⟩ / ‖x‖,
//! ```
//!
//! for unit `h`, where `g_{p,q}` is the polynomial family defined by
//! `g_{0,q} = 1` and
//!
//! ```text
//! g_{p,q}(τ) = (1 - τ²) g'_{p-1,q}(τ) + (q - p + 1) τ g_{p-1,q}(τ).
//! ```
//!
//! This crate constructs the family exactly (big-integer coefficients in the
//! indeterminate `q`), verifies its algebraic identities at the coefficient
//! level, evaluates the derivative tensors both in closed form and through
//! independent oracles (finite differences, polarization), and computes the
//! ν-Hölder and Lipschitz smoothness constants of `D^p f_{p+ν}` together
//! with sampling-based checks that the proved bounds actually hold.
//!
//! Modules:
//!
//! - [`polyfamily`] — exact symbolic construction of `g_{p,q}` and the
//!   coefficient-level identity suite;
//! - [`normcalc`] — the metric geometry (`B`, `τ_h`), tensor evaluation and
//!   numeric oracles;
//! - [`constants`] — closed-form smoothness constants and the empirical
//!   Hölder-constant estimator for the polynomials;
//! - [`propcheck`] — grid- and sampling-based verification suites;
//! - [`cli`] — the `normpow` command-line front end.

// Parity tests via `% 2` and index loops over matrix triangles read better
// here than clippy's suggestions.
#![allow(clippy::manual_is_multiple_of, clippy::needless_range_loop)]

pub mod cli;
pub mod constants;
pub mod normcalc;
pub mod polyfamily;
pub mod propcheck;
pub mod report;

pub use polyfamily::{GPoly, QPoly, TauPoly};
pub use report::{VerifyReport, Violation};
