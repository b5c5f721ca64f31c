//! Modified Li coefficients of L-functions.
//!
//! For an L-function `F` with non-trivial zeros `ρ` and a real shift `a ≠ 1/2`,
//! the modified Li coefficients are
//!
//! ```text
//! λ_F(n, a) = Σ_ρ [1 − ((ρ − a)/(ρ + a − 1))^n]
//! ```
//!
//! and for `a < 1/2` the Riemann hypothesis for `F` holds exactly when
//! `Re λ_F(n, a) ≥ 0` for every `n ≥ 1`.
//!
//! The crate computes these numbers by several independent routes (sums over
//! zeros, an explicit arithmetic formula, an asymptotic law), attaches error
//! bounds to every value and turns sequences of values into verdicts.
//! Everything runs on multiprecision arithmetic with a configurable width.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod criterion;
pub mod error;
pub mod lfunc;
pub mod licoeff;
pub mod numerics;
pub mod par;
pub mod zeros;

pub use error::{Error, Result};
