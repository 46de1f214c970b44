//! Pseudo-Hermitian Dirac Hamiltonians with a `γ5` mass term.
//!
//! The crate builds `H = α⃗·p⃗ + β(m1 + m2·γ5)` in (1+1) and (3+1) dimensions,
//! the operators `P`, `T`, `C`, `η` that act on it, the PT and CPT inner
//! products, the maximal-mass parametrizations of `(m1, m2)`, and the wave
//! operators on the anti-de Sitter momentum hyperboloid. Every identity that
//! ties these objects together is exposed as a numerical check.
//!
//! ```
//! use pthermit::algebra::build_gamma_rep;
//! use pthermit::dirac::{build_hamiltonian, spectrum, SignVariant};
//!
//! let rep = build_gamma_rep(2)?;
//! let h = build_hamiltonian(&rep, &[3.0], 5.0, 3.0, SignVariant::PlusPlus)?;
//! let s = spectrum(&h)?;
//! assert!((s.eigenvalues[1].re - 5.0).abs() < 1e-12);
//! # Ok::<(), pthermit::Error>(())
//! ```

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod desitter;
pub mod dirac;
pub mod error;
pub mod innerproduct;
pub mod massdomain;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
