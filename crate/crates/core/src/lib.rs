//! Cyclotomic constructions of skew partial difference sets and of
//! (relative) disjoint/external partial difference families over finite
//! fields, with an independent brute-force certification layer.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation: IO, parallel sweeps and file formats live in the
//! `cycloskew` command-line crate.
//!
//! Layout:
//!
//! - [`field`]: `GF(p^m)` with dense exp/log/Zech tables.
//! - [`numtheory`]: prime powers and the quadratic-form representations
//!   `s^2+t^2`, `x^2+4y^2`, `a^2+2b^2` that drive the cyclotomic formulas.
//! - [`cyclotomy`]: cyclotomic classes and cyclotomic numbers, both brute
//!   force and closed form for orders 2, 4 and 8.
//! - [`diffsets`]: difference multisets and the certificate layer (PDS,
//!   skew PDS, ADS, DPDF/EPDF and their relative variants).
//! - [`constructions`]: the recipe registry and the generic combinators.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod constructions;
pub mod cyclotomy;
pub mod diffsets;
mod error;
pub mod field;
pub mod numtheory;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSpec};
