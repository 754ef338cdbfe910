//! Covering radius: the Delsarte upper bound, exact coset minimum weights,
//! exact computation for small redundancy, and certificates for the doubly
//! even neighbors of singly even codes.

use serde::Serialize;

use crate::code::{check_len, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::minweight::coset_min_weight_bz;
use crate::neighbors::doubly_even_neighbors;
use crate::shadow::{parity_class, shadow, ParityClass, ShadowCosets};
use crate::weights::{
    coset_weight_distribution, macwilliams_transform, weight_distribution_with_budget,
    WeightDistribution, DEFAULT_MAX_ENUMERATION_DIM,
};

/// Weight distribution of the dual, enumerating whichever of `C`, `C⊥` is
/// smaller.
pub fn dual_distribution(code: &LinearCode) -> Result<WeightDistribution> {
    let (n, k) = (code.n(), code.k());
    if code.is_self_dual() {
        return weight_distribution_with_budget(code, DEFAULT_MAX_ENUMERATION_DIM);
    }
    if k == n {
        let mut counts = vec![0; n + 1];
        counts[0] = 1;
        return Ok(WeightDistribution::new(counts));
    }
    if n - k < k {
        weight_distribution_with_budget(&code.dual()?, DEFAULT_MAX_ENUMERATION_DIM)
    } else {
        let w = weight_distribution_with_budget(code, DEFAULT_MAX_ENUMERATION_DIM)?;
        macwilliams_transform(&w, n, k)
    }
}

/// Number of distinct nonzero weights in `C⊥`, an upper bound on the
/// covering radius of `C`.
pub fn delsarte_bound(code: &LinearCode) -> Result<usize> {
    Ok(dual_distribution(code)?.nonzero_weights().len())
}

/// Minimum weight of `v + C` by a Gray-code sweep over all codewords;
/// `k` may be at most 34.
pub fn coset_min_weight(code: &LinearCode, v: &BitVector) -> Result<usize> {
    check_len(code.n(), v)?;
    let w = coset_weight_distribution(code, v, DEFAULT_MAX_ENUMERATION_DIM)?;
    Ok(w.counts().iter().position(|&c| c > 0).expect("a coset is nonempty"))
}

/// Exact covering radius by breadth-first search over syndromes, one byte
/// per syndrome. Needs `n − k ≤ 32` and `2^(n−k)` bytes within
/// `memory_budget`.
pub fn covering_radius_exact(code: &LinearCode, memory_budget: usize) -> Result<usize> {
    let (n, k) = (code.n(), code.k());
    if k == n {
        return Ok(0);
    }
    let r = n - k;
    if r > 32 || (1usize << r) > memory_budget {
        return Err(Error::TooLarge(format!(
            "2^{r} syndromes exceed the memory budget of {memory_budget} bytes"
        )));
    }
    let h = code.dual()?;
    // syndrome of the unit vector e_j: bit i is H[i][j]
    let columns: Vec<u32> = (0..n)
        .map(|j| {
            h.rows()
                .iter()
                .enumerate()
                .fold(0u32, |s, (i, row)| s | ((row.get(j) as u32) << i))
        })
        .collect();
    const UNSEEN: u8 = u8::MAX;
    let size = 1usize << r;
    let mut dist = vec![UNSEEN; size];
    dist[0] = 0;
    let mut frontier: Vec<u32> = vec![0];
    let mut reached = 1usize;
    let mut level = 0u8;
    while reached < size {
        let mut next = Vec::new();
        for &s in &frontier {
            for &c in &columns {
                let t = (s ^ c) as usize;
                if dist[t] == UNSEEN {
                    dist[t] = level + 1;
                    next.push(t as u32);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        reached += next.len();
        level += 1;
        frontier = next;
    }
    Ok(level as usize)
}

/// How an upper bound was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UpperBoundMethod {
    Delsarte,
    Exact,
}

/// `lower ≤ CR(C) ≤ upper`, with a coset whose minimum weight is `lower`.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringCertificate {
    pub upper: usize,
    pub upper_method: UpperBoundMethod,
    pub lower: usize,
    pub witness: BitVector,
    /// The covering radius, when the bounds meet.
    pub conclusion: Option<usize>,
}

impl CoveringCertificate {
    fn new(upper: usize, upper_method: UpperBoundMethod, lower: usize, witness: BitVector) -> Self {
        let conclusion = (lower == upper).then_some(upper);
        CoveringCertificate { upper, upper_method, lower, witness, conclusion }
    }
}

/// Certificates for the two doubly even neighbors `C₀ ∪ C₁` and `C₀ ∪ C₃` of
/// a singly even self-dual code whose shadow has minimum weight 12. The
/// upper bound is Delsarte's; the lower bound is the minimum weight of the
/// complementary coset `C₂ ∪ C₃` (resp. `C₂ ∪ C₁`), found by exhaustive
/// information-set search and cross-checked when `sweep_check` is set by a
/// full Gray-code sweep.
pub fn certify_cr12(
    code: &LinearCode,
    sweep_check: bool,
) -> Result<(CoveringCertificate, CoveringCertificate)> {
    if parity_class(code)? != ParityClass::SinglyEven {
        return Err(Error::PreconditionFailed("the code is not singly even".into()));
    }
    let s = shadow(code)?;
    if s.min_weight != 12 {
        return Err(Error::PreconditionFailed(format!(
            "shadow minimum weight is {}, not 12",
            s.min_weight
        )));
    }
    let cosets = ShadowCosets::new(code)?;
    let (n1, n2) = doubly_even_neighbors(code)?;
    let one = |nb: &LinearCode| -> Result<CoveringCertificate> {
        // C₂ is a coset of either neighbor, different from the neighbor itself
        let (lower, witness) = coset_min_weight_bz(nb, &cosets.c2_rep)?;
        if sweep_check {
            let swept = coset_min_weight(nb, &cosets.c2_rep)?;
            if swept != lower {
                return Err(Error::PreconditionFailed(format!(
                    "coset minimum weight disagrees: search {lower}, sweep {swept}"
                )));
            }
        }
        Ok(CoveringCertificate::new(delsarte_bound(nb)?, UpperBoundMethod::Delsarte, lower, witness))
    };
    Ok((one(&n1)?, one(&n2)?))
}

/// Certificate combining the Delsarte bound with the best of the given
/// candidate cosets.
pub fn certify_with_cosets(code: &LinearCode, candidates: &[BitVector]) -> Result<CoveringCertificate> {
    let upper = delsarte_bound(code)?;
    let mut best: Option<(usize, BitVector)> = None;
    for v in candidates {
        let (w, leader) = coset_min_weight_bz(code, v)?;
        if best.as_ref().map_or(true, |(b, _)| w > *b) {
            best = Some((w, leader));
        }
    }
    let (lower, witness) = best.unwrap_or((0, BitVector::zeros(code.n())));
    Ok(CoveringCertificate::new(upper, UpperBoundMethod::Delsarte, lower, witness))
}

/// Certificate with the exact value from [`covering_radius_exact`].
pub fn certify_exact(code: &LinearCode, memory_budget: usize) -> Result<CoveringCertificate> {
    let cr = covering_radius_exact(code, memory_budget)?;
    Ok(CoveringCertificate::new(cr, UpperBoundMethod::Exact, cr, BitVector::zeros(code.n())))
}
