//! Neural codes and their combinatorics.
//!
//! The crate is organised bottom-up:
//!
//! - [`code`]: codewords, codes, maximality, max-intersection completeness,
//!   doublet-maximal codes and one-dimensional obstructions.
//! - [`interval`]: realizations of a code by intervals of the real line with
//!   exact rational endpoints, atoms, open/closed conversions and an
//!   exhaustive realizability decider.
//! - [`maps`]: elementary code maps and the checks built on them.
//! - [`ring`]: the neural ring as `F2^m`, unity-preserving endomorphisms and
//!   the neural-ring-homomorphism census.
//! - [`circulant`]: circulant codes and closed-form endomorphism counts.
//! - [`verify`]: seeded batteries and reports used by the `ncode` CLI.

pub mod circulant;
pub mod code;
pub mod error;
pub mod interval;
pub mod maps;
pub mod ring;
pub mod verify;

pub use code::{Code, Codeword};
pub use error::{Error, Result};
