//! Exact enumerators of binary linear codes and the invariant-ring machinery
//! around them.
//!
//! The crate computes genus-`g` weight enumerators, Jacobi polynomials and
//! split Jacobi polynomials of binary codes by exhaustive enumeration, applies
//! MacWilliams-type transforms and polarization operators to them, verifies
//! combinatorial designs held by codewords, and builds the finite matrix group
//! `G_g` over `Q(zeta_8)` together with its Molien series. All arithmetic is
//! exact.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. With `std` enabled, the enumeration kernels run on a rayon pool.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cyclo;
pub mod designs;
pub mod enums;
pub mod error;
pub mod gf2;
pub mod invar;
pub mod mpoly;
pub mod tables;
pub mod xform;

mod combin;

pub use error::{Error, Result};

/// Arbitrary-precision rational number used for every exact coefficient.
pub type Rational = num_rational::BigRational;
