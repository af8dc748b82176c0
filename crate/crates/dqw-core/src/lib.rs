//! Decomposed-type quantum walks on the integer line.
//!
//! The crate covers the full pipeline for walks whose coin acts separately
//! on the real and imaginary parts of the state: validating coin pairs and
//! evolving them directly ([`walk`], [`decompose`]), lifting them to 4-state
//! walks with a real orthogonal coin, analyzing the momentum-space spectrum
//! ([`spectral`]), and evaluating the closed-form weak limits with their
//! localization weights ([`limits`]). [`compare`] quantifies how close a
//! finite-time distribution sits to its rescaled limit.
//!
//! Everything is `no_std`-compatible (with `alloc`); the `std` feature only
//! switches the float backend.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod compare;
pub mod decompose;
pub mod error;
pub mod limits;
pub mod numerics;
pub mod quad;
pub mod spectral;
pub mod walk;

pub use error::Error;
pub use numerics::{Complex64, ComplexMatrix2, ComplexMatrix4, Tolerance};
pub use walk::{Distribution, InitialState2, InitialState4, WalkState2, WalkState4};
