//! Exact arithmetic and generators for Machin-like arctangent formulas for π.
//!
//! Everything in this crate is pure computation over arbitrary-precision
//! integers and rationals; it needs `alloc` but not `std`. File formats,
//! trace export and the command-line tool live in the `machin` crate.
//!
//! The modules, bottom-up:
//!
//! * [`exactnum`]: integers, rationals, Gaussian rationals, fixed-point
//!   decimals and the few exact primitives (floors, certified square roots,
//!   Gaussian powers, `log10`) that everything else uses.
//! * [`formula`]: the formula model, the Gaussian product test, Lehmer
//!   measures and a registry of known formulas.
//! * [`generator`]: two-term seeds, floor-step and splitting identities,
//!   and the integerization pipelines with replayable traces.
//! * [`engines`]: Maclaurin, Euler and iteration-based arctangent series in
//!   integer fixed point, and π from any formula.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod engines;
pub mod error;
pub mod exactnum;
pub mod formula;
pub mod generator;

pub use error::{Error, Result};
