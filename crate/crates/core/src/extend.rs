//! Extension of a self-dual `[n, n/2]` code to a self-dual `[n+2, n/2+1]`
//! code along an odd-weight vector `x`:
//!
//! `C(x) = (0,0,C⁰) ∪ (1,1,C²) ∪ (1,0,C¹) ∪ (0,1,C³)`
//!
//! with `C⁰ = C ∩ ⟨x⟩⊥`, `C² = C \ C⁰`, `C¹ = x + C⁰` and `C³ = x + C²`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::code::{check_len, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// The four cosets of `C⁰` that make up `C(x)`.
#[derive(Clone, Debug)]
pub struct SplitCosets {
    /// `C ∩ ⟨x⟩⊥`; `None` when it is the zero code (`n = 2`).
    pub c0: Option<LinearCode>,
    /// Lexicographically least representatives of `C²`, `C¹ = x + C⁰` and
    /// `C³ = x + C²`.
    pub c2_rep: BitVector,
    pub c1_rep: BitVector,
    pub c3_rep: BitVector,
}

impl SplitCosets {
    fn reduce0(&self, v: &BitVector) -> BitVector {
        match &self.c0 {
            Some(c) => c.reduce(v),
            None => v.clone(),
        }
    }

    pub fn in_c0(&self, v: &BitVector) -> bool {
        self.reduce0(v).is_zero()
    }
}

/// Splits `C` and `x + C` into `C⁰`-cosets for an odd-weight `x`.
pub fn split_cosets(code: &LinearCode, x: &BitVector) -> Result<SplitCosets> {
    code.require_self_dual()?;
    check_len(code.n(), x)?;
    if x.weight() % 2 == 0 {
        return Err(Error::EvenWeight);
    }
    let n = code.n();
    // x has odd weight, so x · 1 = 1 and C⁰ ≠ C
    let y = code
        .rows()
        .iter()
        .find(|r| r.dot(x))
        .cloned()
        .expect("a self-dual code contains the all-ones vector");
    let others: Vec<BitVector> = code
        .rows()
        .iter()
        .map(|r| if r.dot(x) { r.xor(&y) } else { r.clone() })
        .filter(|r| !r.is_zero())
        .collect();
    let c0 = if others.is_empty() {
        None
    } else {
        Some(LinearCode::from_rows(n, others)?)
    };
    let mut s = SplitCosets { c0, c2_rep: y.clone(), c1_rep: x.clone(), c3_rep: x.xor(&y) };
    s.c2_rep = s.reduce0(&y);
    s.c1_rep = s.reduce0(x);
    s.c3_rep = s.reduce0(&x.xor(&y));
    Ok(s)
}

/// `C(x)`, self-dual of length `n + 2`; the new coordinates come first.
pub fn tsai_extend(code: &LinearCode, x: &BitVector) -> Result<LinearCode> {
    let s = split_cosets(code, x)?;
    let n = code.n();
    let pair = |a: bool, b: bool, v: &BitVector| BitVector::from_bools(&[a, b]).concat(v);
    let mut rows = vec![pair(true, true, &s.c2_rep), pair(true, false, &s.c1_rep)];
    if let Some(c0) = &s.c0 {
        rows.extend(c0.rows().iter().map(|r| pair(false, false, r)));
    }
    LinearCode::from_rows(n + 2, rows)
}

/// `parent:bitstring` — the parent code and the full vector `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionRecipe {
    pub parent: String,
    pub x: BitVector,
}

impl ExtensionRecipe {
    /// A length-64 vector given by its first 32 bits, the rest being ones.
    pub fn from_head(parent: impl Into<String>, head: &BitVector) -> Result<Self> {
        if head.len() != 32 {
            return Err(Error::InvalidArgument(format!(
                "expected 32 leading bits, got {}",
                head.len()
            )));
        }
        Ok(ExtensionRecipe { parent: parent.into(), x: head.concat(&BitVector::ones(32)) })
    }
}

impl fmt::Display for ExtensionRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.parent, self.x.to_bit_string())
    }
}

impl FromStr for ExtensionRecipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (parent, bits) = s
            .trim()
            .rsplit_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected parent:bits, got `{s}`")))?;
        Ok(ExtensionRecipe { parent: parent.to_string(), x: BitVector::parse_bits(bits)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    fn bits(s: &str) -> BitVector {
        BitVector::parse_bits(s).unwrap()
    }

    #[test]
    fn length_two_extension() {
        let c = known::repetition2();
        let s = split_cosets(&c, &bits("10")).unwrap();
        assert!(s.c0.is_none());
        assert_eq!(s.c2_rep, bits("11"));
        assert_eq!(s.c1_rep, bits("10"));
        assert_eq!(s.c3_rep, bits("01"));
        let e = tsai_extend(&c, &bits("10")).unwrap();
        let expected = LinearCode::from_rows(4, vec![bits("1010"), bits("0101")]).unwrap();
        assert_eq!(e, expected);
        assert!(e.is_self_dual());
        assert_eq!(tsai_extend(&c, &bits("11")), Err(Error::EvenWeight));
    }

    #[test]
    fn extension_of_golay_is_self_dual() {
        let c = known::golay24();
        let mut x = BitVector::zeros(24);
        for i in [0, 3, 4, 9, 17] {
            x.set(i, true);
        }
        let s = split_cosets(&c, &x).unwrap();
        assert_eq!(s.c0.as_ref().unwrap().k(), 11);
        assert!(s.c2_rep.dot(&x));
        let e = tsai_extend(&c, &x).unwrap();
        assert_eq!((e.n(), e.k()), (26, 13));
        assert!(e.is_self_dual());
    }

    #[test]
    fn recipe_round_trip() {
        let r: ExtensionRecipe = "C64_1:0110".parse().unwrap();
        assert_eq!(r.to_string(), "C64_1:0110");
        let h = ExtensionRecipe::from_head("C64_1", &BitVector::zeros(32)).unwrap();
        assert_eq!(h.x.weight(), 32);
        assert!(!h.x.get(31) && h.x.get(32));
    }
}
