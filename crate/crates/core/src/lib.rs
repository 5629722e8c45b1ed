//! Exact and certified computations around inhomogeneous diophantine
//! approximation: continued fractions, Ostrowski numeration, the three-gap
//! theorem, Bohr sets and generalised arithmetic progressions, shift-reduced
//! fractions, interval-set measures of approximation sets, and the scalar
//! sum experiments built on them.
//!
//! The crate is `no_std` and only needs `alloc`. Every comparison that
//! involves an irrational number goes through [`numbers::Enclosure`] and the
//! resolve protocol in [`numbers::resolve`], so results are certified rather
//! than floating-point guesses. The only floating-point paths are the
//! logarithms (documented precision) and the fast summation mode in
//! [`sums`], which carries an explicit error bound.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bohr;
pub mod contfrac;
pub mod error;
pub mod measure;
pub mod numbers;
pub mod ostrowski;
pub mod shiftred;
pub mod sums;
pub mod threegap;

pub use error::{Error, Result};
pub use numbers::{BigRational, Enclosure, RealSpec};
