//! Exact computer algebra for formal deformation quantization.
//!
//! The crate works with truncated series `A_0[ℏ]/(ℏ^N)` over a base algebra
//! `A_0` (matrices, polynomial symbols, or matrices of polynomials, with
//! rational or prime-field coefficients) and a star product deforming the
//! multiplication of `A_0`. On top of that it provides:
//!
//! - ★-inversion of series whose classical limit is a unit,
//! - lifting of idempotents from `A_0` through the tower `A/(ℏ^j)`,
//! - lifting of invertible matrices across truncations,
//! - checks of the kernel group `1 + M_n(ℏ^j A_0)` and of conjugacy between
//!   idempotent lifts,
//! - a batch harness ([`k0lab`]) producing JSON evidence reports.
//!
//! All arithmetic is exact; every equality check is syntactic.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod hensel;
pub mod k0lab;
pub mod sample;
pub mod series;
pub mod star;

pub use error::{Error, Result};
