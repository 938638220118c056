//! Explicit solutions of the associative Yang-Baxter equation (AYBE) for
//! `Mat(N, C)`, their quantum and classical companions, and a numerical
//! harness that checks every functional identity they are expected to obey.
//!
//! The crate is organised bottom-up:
//!
//! * [`tensor`] – dense complex tensors in `A⊗A` and `A⊗A⊗A`.
//! * [`bd`] – associative BD-structures and their chain combinatorics.
//! * [`rmatrix`] – constructors for the solution families.
//! * [`verify`] – seeded, pole-avoiding residual suites.
//! * [`bundles`] – splitting matrices of bundles on cycles of projective
//!   lines, and the Massey-product r-matrix with an independent
//!   linear-algebra oracle.
//! * [`cli`] – the `aybe` command-line front end.

#![allow(clippy::needless_range_loop)]

pub mod bd;
pub mod bundles;
pub mod cli;
pub mod cmath;
pub mod error;
pub mod rmatrix;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
