//! Bit-packed linear algebra over GF(2).

mod matrix;
pub(crate) mod packed;
mod vector;

pub use matrix::{BitMatrix, RowEchelon};
pub use packed::has_native_popcount;
pub use vector::BitVector;
