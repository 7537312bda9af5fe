//! Cryptographic properties of Boolean functions `F_2^n -> F_2` and of
//! vectorial Boolean functions `F_2^n -> F_2^n`.
//!
//! Functions are handled as word-packed [`TruthTable`]s or as [`Anf`]
//! monomial sets. On top of these sit Walsh spectra and nonlinearity
//! ([`spectrum`]), the structure of quadratic functions ([`quadratic`]),
//! closed forms for splitting functions and convolutional products
//! ([`split`]), cubic weights ([`cubic`]), and vectorial analytics around
//! differential uniformity and second-order derivatives ([`vectorial`], [`apn`]).
//!
//! Points of `F_2^n` are `u32` values with `x_1` in the least significant bit.
//!
//! The crate is `no_std` and needs only `alloc`. Every value is immutable
//! after construction and every operation is a pure function of its inputs.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod affine;
pub mod anf;
pub mod apn;
pub mod cubic;
pub mod error;
pub mod gf2;
pub mod quadratic;
pub mod spectrum;
pub mod split;
pub mod table;
pub mod vectorial;

pub use affine::{apply_affine, AffineMap};
pub use anf::{anf_to_tt, conv_product, direct_sum, tt_to_anf, Anf};
pub use error::{Error, Parity, Result};
pub use spectrum::{wht, WalshSpectrum};
pub use table::{dot, TruthTable};
pub use vectorial::{DduTable, VectorialBf};

/// Largest variable count accepted for a single function (a 16 MiB bitset).
pub const MAX_VARS: usize = 24;
