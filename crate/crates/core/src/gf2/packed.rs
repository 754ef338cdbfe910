//! Fixed-width packed words for the hot enumeration loops.
//!
//! `BitVector` is convenient but heap-allocated. The exhaustive loops convert
//! once to one of the `Packed` types below and stay in registers. Bit `i` of a
//! packed word is coordinate `i`, matching `BitVector`'s layout.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign};

use super::BitVector;

pub(crate) trait Packed:
    Copy
    + Eq
    + Ord
    + Hash
    + Default
    + Debug
    + Send
    + Sync
    + BitXor<Output = Self>
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + BitXorAssign
    + 'static
{
    #[allow(dead_code)]
    const WIDTH: usize;

    fn from_vector(v: &BitVector) -> Self;
    fn to_vector(self, len: usize) -> BitVector;
    fn weight(self) -> u32;
    fn bit(self, i: usize) -> bool;
    fn with_bit(self, i: usize) -> Self;
}

impl Packed for u64 {
    const WIDTH: usize = 64;

    #[inline]
    fn from_vector(v: &BitVector) -> Self {
        v.words().first().copied().unwrap_or(0)
    }
    fn to_vector(self, len: usize) -> BitVector {
        BitVector::from_words(len, vec![self])
    }
    #[inline(always)]
    fn weight(self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn bit(self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
    #[inline]
    fn with_bit(self, i: usize) -> Self {
        self | (1 << i)
    }
}

impl Packed for u128 {
    const WIDTH: usize = 128;

    #[inline]
    fn from_vector(v: &BitVector) -> Self {
        let w = v.words();
        let lo = w.first().copied().unwrap_or(0) as u128;
        let hi = w.get(1).copied().unwrap_or(0) as u128;
        lo | (hi << 64)
    }
    fn to_vector(self, len: usize) -> BitVector {
        BitVector::from_words(len, vec![self as u64, (self >> 64) as u64])
    }
    #[inline(always)]
    fn weight(self) -> u32 {
        (self as u64).count_ones() + ((self >> 64) as u64).count_ones()
    }
    #[inline]
    fn bit(self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
    #[inline]
    fn with_bit(self, i: usize) -> Self {
        self | (1 << i)
    }
}

/// Multi-word packed vector for lengths beyond 128.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) struct Wide<const W: usize>(pub [u64; W]);

impl<const W: usize> Default for Wide<W> {
    fn default() -> Self {
        Wide([0; W])
    }
}

impl<const W: usize> BitXor for Wide<W> {
    type Output = Self;
    #[inline]
    fn bitxor(mut self, rhs: Self) -> Self {
        for i in 0..W {
            self.0[i] ^= rhs.0[i];
        }
        self
    }
}

impl<const W: usize> BitAnd for Wide<W> {
    type Output = Self;
    #[inline]
    fn bitand(mut self, rhs: Self) -> Self {
        for i in 0..W {
            self.0[i] &= rhs.0[i];
        }
        self
    }
}

impl<const W: usize> BitOr for Wide<W> {
    type Output = Self;
    #[inline]
    fn bitor(mut self, rhs: Self) -> Self {
        for i in 0..W {
            self.0[i] |= rhs.0[i];
        }
        self
    }
}

impl<const W: usize> BitXorAssign for Wide<W> {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Self) {
        for i in 0..W {
            self.0[i] ^= rhs.0[i];
        }
    }
}

impl<const W: usize> Packed for Wide<W> {
    const WIDTH: usize = 64 * W;

    fn from_vector(v: &BitVector) -> Self {
        let mut out = [0u64; W];
        for (o, w) in out.iter_mut().zip(v.words()) {
            *o = *w;
        }
        Wide(out)
    }
    fn to_vector(self, len: usize) -> BitVector {
        BitVector::from_words(len, self.0.to_vec())
    }
    #[inline(always)]
    fn weight(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    #[inline]
    fn bit(self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }
    #[inline]
    fn with_bit(mut self, i: usize) -> Self {
        self.0[i / 64] |= 1 << (i % 64);
        self
    }
}

/// Largest code length the packed kernels handle.
pub(crate) const MAX_PACKED_LEN: usize = 512;

/// Runs `$body` with the type alias `$P` bound to the narrowest packed type
/// that holds `$len` bits. Evaluates to `Err(Error::TooLarge)` beyond
/// [`MAX_PACKED_LEN`].
macro_rules! with_packed {
    ($len:expr, $P:ident => $body:expr) => {{
        let len = $len;
        if len <= 64 {
            type $P = u64;
            Ok($body)
        } else if len <= 128 {
            type $P = u128;
            Ok($body)
        } else if len <= 256 {
            type $P = $crate::gf2::packed::Wide<4>;
            Ok($body)
        } else if len <= $crate::gf2::packed::MAX_PACKED_LEN {
            type $P = $crate::gf2::packed::Wide<8>;
            Ok($body)
        } else {
            Err($crate::error::Error::TooLarge(format!(
                "length {} exceeds the packed kernel limit of {}",
                len,
                $crate::gf2::packed::MAX_PACKED_LEN
            )))
        }
    }};
}
pub(crate) use with_packed;

/// True when the CPU has a hardware population-count instruction.
pub fn has_native_popcount() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::is_x86_feature_detected!("popcnt")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        true
    }
}

/// Calls an `#[inline(always)]` kernel through a `popcnt`-enabled trampoline
/// when the CPU supports it, so `count_ones` lowers to the native instruction
/// without requiring a global target feature.
macro_rules! popcount_dispatch {
    ($native:expr, $kernel:expr) => {{
        #[cfg(target_arch = "x86_64")]
        {
            #[target_feature(enable = "popcnt")]
            unsafe fn trampoline<R>(f: impl FnOnce() -> R) -> R {
                f()
            }
            if $native && $crate::gf2::packed::has_native_popcount() {
                // SAFETY: the feature was detected at runtime just above.
                unsafe { trampoline($kernel) }
            } else {
                ($kernel)()
            }
        }
        #[cfg(not(target_arch = "x86_64"))]
        {
            let _ = $native;
            ($kernel)()
        }
    }};
}
pub(crate) use popcount_dispatch;
