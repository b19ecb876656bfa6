//! Simplest algebraic Hecke characters of imaginary quadratic fields `Q(√−D)`.
//!
//! The crate covers the exact side (Kronecker symbols, reduced forms, local
//! character sets, the dimension verdict, root numbers) and the analytic side
//! (theta series, Eisenstein lattice sums, central values and derivatives) for
//! the family of characters of smallest conductor whose abelian varieties have
//! dimension equal to the class number.
//!
//! Everything here is `no_std` with `alloc`; IO and formatting live in the
//! `cmhecke` companion crate.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod arith;
pub mod characters;
pub mod dimension;
pub mod error;
pub mod field;
pub mod lfun;
pub mod rootnum;

pub use characters::{AlgebraicInteger, Basis, CharacterSpec, LocalCharacterSpec, LocalKind, Mu12, Sign};
pub use dimension::{DimensionTag, DimensionVerdict, EpsilonProfile, ExampleKind};
pub use error::{Error, Result};
pub use field::{build_field, Case, FieldData};
pub use lfun::{CentralReport, NumericsConfig};
pub use rootnum::CosetValue;
