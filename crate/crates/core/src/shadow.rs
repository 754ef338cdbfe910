//! Parity classes, the doubly even subcode and the shadow of a self-dual code.
//!
//! For a singly even self-dual `C`, the map `w ↦ wt(w)/2 mod 2` is linear on
//! `C` and its kernel is the doubly even subcode `C₀` of index 2. Its dual
//! splits into four cosets of `C₀`:
//!
//! ```text
//! C₀⊥ = C₀ ∪ C₁ ∪ C₂ ∪ C₃,   C = C₀ ∪ C₂,   S = C₁ ∪ C₃
//! ```
//!
//! where `S = C₀⊥ \ C` is the shadow.

use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::weights::{coset_low_weight_counts, coset_weight_distribution, WeightDistribution};
use crate::minweight::coset_min_weight_bz;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ParityClass {
    /// Every codeword weight is divisible by four.
    DoublyEven,
    /// Self-dual with some codeword of weight `2 mod 4`.
    SinglyEven,
}

/// Parity class of a self-dual code. A self-orthogonal code is doubly even
/// exactly when its generator rows all have weight `0 mod 4`.
pub fn parity_class(code: &LinearCode) -> Result<ParityClass> {
    code.require_self_dual()?;
    Ok(if code.rows().iter().all(|r| r.weight() % 4 == 0) {
        ParityClass::DoublyEven
    } else {
        ParityClass::SinglyEven
    })
}

/// `C₀`: the codewords of weight `0 mod 4`.
pub fn doubly_even_subcode(code: &LinearCode) -> Result<LinearCode> {
    if parity_class(code)? == ParityClass::DoublyEven {
        return Err(Error::DoublyEven);
    }
    let (rows, _) = split_singly_even(code)?;
    if rows.is_empty() {
        // n = 2: C₀ is the zero code, which is not representable
        return Err(Error::NotApplicable("doubly even subcode is the zero code".into()));
    }
    LinearCode::from_rows(code.n(), rows)
}

/// `C₀` (as generator rows, possibly none) and one codeword of `C₂ = C \ C₀`.
fn split_singly_even(code: &LinearCode) -> Result<(Vec<BitVector>, BitVector)> {
    let mut rows: Vec<BitVector> = code.rows().to_vec();
    let p = rows
        .iter()
        .position(|r| r.weight() % 4 == 2)
        .ok_or(Error::DoublyEven)?;
    let y = rows.swap_remove(p);
    for r in rows.iter_mut() {
        if r.weight() % 4 == 2 {
            // wt(r + y) = wt(r) + wt(y) - 2 wt(r ∧ y), and wt(r ∧ y) is even
            r.xor_assign(&y);
        }
    }
    Ok((rows, y))
}

/// The coset structure of a singly even self-dual code.
#[derive(Clone, Debug)]
pub struct ShadowCosets {
    /// `None` only for length 2, where `C₀ = {0}`.
    pub c0: Option<LinearCode>,
    /// Representative of `C₂ = C \ C₀`.
    pub c2_rep: BitVector,
    /// Representatives of the two shadow halves `C₁`, `C₃`, each the
    /// lexicographically smallest vector of its coset; `C₁` is the smaller.
    pub c1_rep: BitVector,
    pub c3_rep: BitVector,
}

impl ShadowCosets {
    pub fn new(code: &LinearCode) -> Result<Self> {
        if parity_class(code)? == ParityClass::DoublyEven {
            return Err(Error::DoublyEven);
        }
        let (rows, y) = split_singly_even(code)?;
        let n = code.n();
        let c0 = if rows.is_empty() {
            None
        } else {
            Some(LinearCode::from_rows(n, rows)?)
        };
        let perp_basis = match &c0 {
            Some(c0) => c0.generator().nullspace().into_rows(),
            None => crate::gf2::BitMatrix::identity(n).into_rows(),
        };
        let s = perp_basis
            .into_iter()
            .find(|r| !code.contains(r))
            .expect("C₀⊥ is strictly larger than C");
        let mut cosets = ShadowCosets {
            c0,
            c2_rep: y.clone(),
            c1_rep: s.clone(),
            c3_rep: s.xor(&y),
        };
        cosets.c2_rep = cosets.reduce0(&y);
        let a = cosets.reduce0(&s);
        let b = cosets.reduce0(&s.xor(&y));
        let (c1_rep, c3_rep) = if a < b { (a, b) } else { (b, a) };
        cosets.c1_rep = c1_rep;
        cosets.c3_rep = c3_rep;
        Ok(cosets)
    }

    /// Lexicographically smallest member of `v + C₀`.
    pub fn reduce0(&self, v: &BitVector) -> BitVector {
        match &self.c0 {
            Some(c0) => c0.reduce(v),
            None => v.clone(),
        }
    }

    /// A vector of the shadow; the shadow is the coset `c1_rep + C`.
    pub fn shadow_rep(&self) -> &BitVector {
        &self.c1_rep
    }
}

/// Shadow summary of a singly even self-dual code.
#[derive(Clone, Debug, Serialize)]
pub struct ShadowReport {
    /// Representatives of `C₁` and `C₃`.
    pub half_coset_reps: [BitVector; 2],
    pub min_weight: usize,
    /// Exact number of shadow vectors of each weight `0..=exact_through`.
    pub low_weight_counts: Vec<u64>,
    pub exact_through: usize,
}

impl ShadowReport {
    pub fn count(&self, weight: usize) -> Option<u64> {
        self.low_weight_counts.get(weight).copied()
    }
}

/// Weights up to this bound are always counted exactly in a [`ShadowReport`].
pub const SHADOW_EXACT_WEIGHT: usize = 16;

pub fn shadow(code: &LinearCode) -> Result<ShadowReport> {
    let cosets = ShadowCosets::new(code)?;
    shadow_from(code, &cosets)
}

pub(crate) fn shadow_from(code: &LinearCode, cosets: &ShadowCosets) -> Result<ShadowReport> {
    let s = cosets.shadow_rep();
    let exact_through = SHADOW_EXACT_WEIGHT.min(code.n());
    let counts = coset_low_weight_counts(code, s, exact_through)?;
    let min_weight = match counts.iter().position(|&c| c > 0) {
        Some(w) => w,
        None => coset_min_weight_bz(code, s)?.0,
    };
    Ok(ShadowReport {
        half_coset_reps: [cosets.c1_rep.clone(), cosets.c3_rep.clone()],
        min_weight,
        low_weight_counts: counts,
        exact_through,
    })
}

/// Full weight distribution of the shadow by a `2^k` Gray-code sweep.
pub fn shadow_distribution(code: &LinearCode, max_dim: usize) -> Result<WeightDistribution> {
    let cosets = ShadowCosets::new(code)?;
    coset_weight_distribution(code, cosets.shadow_rep(), max_dim)
}
