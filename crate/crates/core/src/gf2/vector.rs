use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A packed vector over GF(2).
///
/// Coordinate `i` (zero-based) lives in bit `i % 64` of word `i / 64`. Bits past
/// `len` in the last word are always zero, so equality and hashing can work on
/// the raw words.
///
/// Text renderings put coordinate 1 (index 0) first: [`BitVector::to_bit_string`]
/// writes it as the leftmost character and [`BitVector::to_hex`] as the most
/// significant bit of the first hex digit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The all-one vector.
    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![!0; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// Builds a vector from zero-based coordinate indices.
    pub fn from_support(len: usize, support: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len);
        for &i in support {
            if i >= len {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {i} out of range for length {len}"
                )));
            }
            v.set(i, true);
        }
        Ok(v)
    }

    /// Builds a vector from one-based coordinate indices, the convention used
    /// for printed supports.
    pub fn from_support_one_based(len: usize, support: &[usize]) -> Result<Self> {
        if support.contains(&0) {
            return Err(Error::InvalidArgument(
                "one-based support contains coordinate 0".into(),
            ));
        }
        let zero_based: Vec<usize> = support.iter().map(|&i| i - 1).collect();
        Self::from_support(len, &zero_based)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Wraps raw words. Tail bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVector { len, words };
        v.clear_tail();
        v
    }

    /// Parses a string of `0`/`1` characters, coordinate 1 first. Spaces and
    /// surrounding parentheses are ignored.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| !matches!(c, ' ' | '(' | ')' | '_' | '|'))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_bools(&bits))
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// Hex rendering with `ceil(len / 4)` digits; coordinate 1 is the most
    /// significant bit of the first digit and pad bits are zero.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u32;
            for j in 0..4 {
                let i = 4 * d + j;
                if i < self.len && self.get(i) {
                    nibble |= 8 >> j;
                }
            }
            out.push(char::from_digit(nibble, 16).unwrap());
        }
        out
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::InvalidArgument(format!(
                "expected {digits} hex digits for length {len}, found {}",
                hex.len()
            )));
        }
        let mut v = Self::zeros(len);
        for (d, c) in hex.chars().enumerate() {
            let nibble = c.to_digit(16).ok_or_else(|| {
                Error::InvalidArgument(format!("invalid hex digit {c:?}"))
            })?;
            for j in 0..4 {
                if nibble & (8 >> j) != 0 {
                    let i = 4 * d + j;
                    if i >= len {
                        return Err(Error::InvalidArgument(
                            "nonzero pad bits in hex string".into(),
                        ));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Standard inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Weight of the coordinatewise AND.
    pub fn and_weight(&self, other: &BitVector) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Zero-based indices of the set coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Index of the first set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Moves coordinate `i` to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> BitVector {
        assert_eq!(perm.len(), self.len);
        let mut out = BitVector::zeros(self.len);
        for i in self.support() {
            out.set(perm[i], true);
        }
        out
    }

    /// `self` followed by `tail`.
    pub fn concat(&self, tail: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + tail.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in tail.support() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `start..start + len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Lexicographic comparison with coordinate 1 most significant, the order
    /// in which printed bit strings sort.
    pub fn cmp_lex(&self, other: &BitVector) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                match a.reverse_bits().cmp(&b.reverse_bits()) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_lex(other)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Serialized as its `0`/`1` string.
impl serde::Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bit_string())
    }
}

impl<'de> serde::Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BitVector::parse_bits(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_puts_coordinate_one_in_the_top_bit() {
        let v = BitVector::parse_bits("100000").unwrap();
        assert_eq!(v.to_hex(), "80");
        let w = BitVector::from_hex(6, "84").unwrap();
        assert_eq!(w.to_bit_string(), "100001");
        assert!(BitVector::from_hex(6, "85").is_err());
        assert!(BitVector::from_hex(6, "8").is_err());
    }

    #[test]
    fn ones_has_clean_tail() {
        let v = BitVector::ones(70);
        assert_eq!(v.weight(), 70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn lex_order_reads_left_to_right() {
        let a = BitVector::parse_bits("0111").unwrap();
        let b = BitVector::parse_bits("1000").unwrap();
        assert!(a < b);
    }

    #[test]
    fn support_round_trip() {
        let v = BitVector::from_support_one_based(66, &[1, 2, 65, 66]).unwrap();
        assert_eq!(v.support(), vec![0, 1, 64, 65]);
        assert!(BitVector::from_support_one_based(4, &[0]).is_err());
        assert!(BitVector::from_support(4, &[4]).is_err());
    }

    fn arb_pair() -> impl Strategy<Value = (BitVector, BitVector)> {
        (1usize..200).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
                .prop_map(|(a, b)| (BitVector::from_bools(&a), BitVector::from_bools(&b)))
        })
    }

    proptest! {
        #[test]
        fn xor_weight_identity((u, v) in arb_pair()) {
            let lhs = u.xor(&v).weight();
            prop_assert_eq!(lhs, u.weight() + v.weight() - 2 * u.and_weight(&v));
            prop_assert!(u.weight() <= u.len());
        }

        #[test]
        fn hex_round_trip((u, _v) in arb_pair()) {
            let back = BitVector::from_hex(u.len(), &u.to_hex()).unwrap();
            prop_assert_eq!(back, u);
        }
    }
}
