//! Exact-arithmetic toolkit for lattice and cohomological computations on
//! hyper-Kähler fourfolds.
//!
//! The crate models the rational extended Mukai lattice
//! H̃(X,ℚ) = ℚα ⊕ H² ⊕ ℚβ of a hyper-Kähler manifold together with the
//! pieces of structure needed to carry a rank-five atomic bundle
//! construction end to end, entirely in exact rational arithmetic:
//!
//! * [`lattice`] — based symmetric bilinear spaces with exact Gram
//!   matrices, pairings and isometry verification;
//! * [`eps`] — polynomials in a small polarization parameter ε for
//!   limit-slope comparisons;
//! * [`extended`] — the extended Mukai lattice, its form q̃, the
//!   operators e_λ, line-bundle twists and Mukai-line normalization;
//! * [`sh`] — a graded model of the Verbitsky component of a fourfold
//!   with Fujiki integration, the 𝔮₂ classes and the Mukai pairing;
//! * [`calculus`] — the projection formulas from Sym²H̃ and the numerical
//!   functionals built on them (Mukai vectors, discriminants, the
//!   Bogomolov-type inequality, Euler pairings, the r_X table);
//! * [`equivalences`] — cohomological actions of derived equivalences as
//!   exact q̃-isometries, including the constraint-solved Poincaré
//!   transform of a Lagrangian fibration;
//! * [`lagrangian`] — Ext-dimension bookkeeping for normal-crossing
//!   Lagrangian surfaces, P-twist transport and the Yoneda form;
//! * [`stability`] — slope polynomials for suitable polarizations
//!   f + εl and destabilizer verdicts in the ε → 0⁺ limit;
//! * [`scenario`] — the deterministic end-to-end regression scenario and
//!   its report format;
//! * [`eval`] — single-operation evaluation from JSON documents.
//!
//! Everything is deterministic and immutable after construction; all
//! comparisons in the test suites are exact.

#![allow(clippy::needless_range_loop)]

pub mod calculus;
pub mod eps;
pub mod equivalences;
pub mod error;
pub mod eval;
pub mod expr;
pub mod extended;
pub mod lagrangian;
pub mod lattice;
mod matrix;
pub mod ratio;
pub mod scenario;
pub mod sh;
pub mod stability;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use ratio::Rational;
