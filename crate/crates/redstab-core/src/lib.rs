//! Numerical layer of reduced stability conditions on polarized varieties.
//!
//! Real-rooted polynomials and interlaced pencils, reduced central charges
//! built from Vandermonde-type determinants, support-property quadratic
//! forms, Bogomolov-type discriminants, wall loci and hypersurface
//! restriction maps on root tuples. All linear algebra is exact over the
//! rationals; floating point is used only to locate irrational roots and to
//! estimate the root separation of a pencil.

#![no_std]

extern crate alloc;

pub mod charge;
pub mod error;
pub mod geometry;
pub mod interlace;
pub mod linalg;
pub mod num;
pub mod poly;
pub mod quadform;
pub mod restrict;
pub mod roots;
pub mod walls;

pub use error::{Error, Result};
pub use num::Rat;
