//! Minimum weight of a code or a coset by the Brouwer–Zimmermann method.

use crate::code::{check_len, LinearCode};
use crate::enumerate::{min_weight_search, InfoSets};
use crate::error::Result;
use crate::gf2::packed::{with_packed, Packed};
use crate::gf2::BitVector;

/// Exact minimum nonzero weight. Terminates once the information-set lower
/// bound reaches the best weight found.
pub fn min_weight(code: &LinearCode) -> Result<usize> {
    Ok(min_weight_with_witness(code)?.0)
}

/// Minimum weight together with a codeword attaining it.
pub fn min_weight_with_witness(code: &LinearCode) -> Result<(usize, BitVector)> {
    let n = code.n();
    with_packed!(n, P => {
        let sets = InfoSets::<P>::new(code);
        let res = min_weight_search(&sets, None, 0);
        debug_assert!(res.exact);
        (res.weight, res.witness.to_vector(n))
    })
}

/// True when the code has a nonzero codeword of weight below `bound`.
/// Stops at the first such word, so rejecting a code is cheap.
pub fn has_weight_below(code: &LinearCode, bound: usize) -> Result<bool> {
    if bound == 0 {
        return Ok(false);
    }
    with_packed!(code.n(), P => {
        let sets = InfoSets::<P>::new(code);
        min_weight_search(&sets, None, bound - 1).weight < bound
    })
}

/// Minimum weight of the coset `v + C` (the coset leader weight), by the same
/// information-set search with a certified lower bound.
pub fn coset_min_weight_bz(code: &LinearCode, v: &BitVector) -> Result<(usize, BitVector)> {
    check_len(code.n(), v)?;
    let n = code.n();
    with_packed!(n, P => {
        let sets = InfoSets::<P>::new(code);
        let res = min_weight_search(&sets, Some(P::from_vector(v)), 0);
        (res.weight, res.witness.to_vector(n))
    })
}
