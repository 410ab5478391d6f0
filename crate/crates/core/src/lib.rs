//! Discrete ℓ¹ double bubbles on the square lattice.
//!
//! Two disjoint bubbles `A` and `B` are finite unions of closed unit cells.
//! Their double-bubble perimeter counts every boundary edge once, including
//! the wall they share. This crate evaluates the continuous minimum, builds
//! lattice configurations whose perimeter stays within two of its ceiling,
//! checks the parallelogram lattice-point certificate used for equal volumes,
//! and provides an exhaustive search for small volumes.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, caching and the
//! command line live in the `dbubble` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certificate;
pub mod constructors;
pub mod continuous;
mod error;
pub(crate) mod math;
pub mod oracle;
pub mod polyomino;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
