//! Construction, classification and verification of extremal self-dual
//! binary codes of lengths 64 and 66.
//!
//! Vectors and codes live in [`gf2`] and [`code`]; the remaining modules build
//! codes (four-circulant search, neighbors, two-coordinate extension),
//! classify them by weight enumerator, compare them up to coordinate
//! permutation, and certify covering radii.

pub mod circulant;
pub mod classify;
pub mod code;
pub mod codefile;
pub mod covering;
mod enumerate;
pub mod equivalence;
pub mod error;
pub mod extend;
pub mod gf2;
pub mod known;
pub mod minweight;
pub mod neighbors;
pub mod shadow;
pub mod tables;
pub mod weights;

pub use classify::{classify_enumerator, rains_bound, EnumeratorClass, Family};
pub use code::LinearCode;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};

/// The guide's snippets, compiled and run as doc-tests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/vectors-and-codes.md")]
    mod vectors_and_codes {}
    #[doc = include_str!("../../../book/src/enumerators.md")]
    mod enumerators {}
    #[doc = include_str!("../../../book/src/four-circulant.md")]
    mod four_circulant {}
    #[doc = include_str!("../../../book/src/neighbors.md")]
    mod neighbors {}
    #[doc = include_str!("../../../book/src/extensions.md")]
    mod extensions {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/covering-radius.md")]
    mod covering_radius {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
