//! Weight distributions and the MacWilliams transform.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{check_len, LinearCode};
use crate::enumerate::{gray_histogram, low_weight_histogram, InfoSets};
use crate::error::{Error, Result};
use crate::gf2::packed::{with_packed, Packed};
use crate::gf2::BitVector;

/// Largest dimension [`weight_distribution`] enumerates without an explicit
/// budget.
pub const DEFAULT_MAX_ENUMERATION_DIM: usize = 34;

/// Coefficients `A_0, …, A_n` of a weight enumerator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "a distribution covers weights 0..=n");
        WeightDistribution { counts }
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `A_i`, zero past the length.
    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Smallest positive weight that occurs.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&i| self.counts[i] > 0)
    }

    /// Positive weights that occur, ascending.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        (1..self.counts.len()).filter(|&i| self.counts[i] > 0).collect()
    }

    /// `A_i = A_{n-i}` for all `i`, as holds whenever the all-one vector is a
    /// codeword.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..=n).all(|i| self.counts[i] == self.counts[n - i])
    }
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightDistribution{{")?;
        let mut first = true;
        for (i, c) in self.counts.iter().enumerate() {
            if *c > 0 {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{i}: {c}")?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

/// Exact weight distribution by a Gray-code sweep over all `2^k` codewords.
/// Fails with [`Error::TooLarge`] when `k` exceeds
/// [`DEFAULT_MAX_ENUMERATION_DIM`].
pub fn weight_distribution(code: &LinearCode) -> Result<WeightDistribution> {
    weight_distribution_with_budget(code, DEFAULT_MAX_ENUMERATION_DIM)
}

pub fn weight_distribution_with_budget(
    code: &LinearCode,
    max_dim: usize,
) -> Result<WeightDistribution> {
    sweep(code, None, max_dim, true)
}

/// Weight distribution of the coset `v + C` by a Gray-code sweep.
pub fn coset_weight_distribution(
    code: &LinearCode,
    v: &BitVector,
    max_dim: usize,
) -> Result<WeightDistribution> {
    check_len(code.n(), v)?;
    sweep(code, Some(v), max_dim, true)
}

/// Same sweep with the hardware popcount disabled; used to check that both
/// paths agree.
pub fn weight_distribution_portable(code: &LinearCode) -> Result<WeightDistribution> {
    sweep(code, None, DEFAULT_MAX_ENUMERATION_DIM, false)
}

fn sweep(
    code: &LinearCode,
    offset: Option<&BitVector>,
    max_dim: usize,
    native: bool,
) -> Result<WeightDistribution> {
    if code.k() > max_dim {
        return Err(Error::TooLarge(format!(
            "2^{} codewords exceed the enumeration budget of 2^{max_dim}",
            code.k()
        )));
    }
    let n = code.n();
    with_packed!(n, P => {
        let rows: Vec<P> = code.rows().iter().map(P::from_vector).collect();
        let off = offset.map_or(P::default(), P::from_vector);
        WeightDistribution::new(gray_histogram(&rows, off, n, native))
    })
}

/// Exact `A_0, …, A_max_weight` without touching all `2^k` codewords:
/// codewords are listed from their restrictions to a chain of information
/// sets.
pub fn low_weight_counts(code: &LinearCode, max_weight: usize) -> Result<Vec<u64>> {
    let max_weight = max_weight.min(code.n());
    with_packed!(code.n(), P => {
        let sets = InfoSets::<P>::new(code);
        low_weight_histogram(&sets, None, max_weight)
    })
}

/// Exact counts of weights `0..=max_weight` in the coset `v + C`.
pub fn coset_low_weight_counts(
    code: &LinearCode,
    v: &BitVector,
    max_weight: usize,
) -> Result<Vec<u64>> {
    check_len(code.n(), v)?;
    let max_weight = max_weight.min(code.n());
    with_packed!(code.n(), P => {
        let sets = InfoSets::<P>::new(code);
        low_weight_histogram(&sets, Some(P::from_vector(v)), max_weight)
    })
}

/// All codewords of the given weights.
pub fn codewords_of_weights(code: &LinearCode, weights: &[usize]) -> Result<Vec<BitVector>> {
    let Some(&max) = weights.iter().max() else {
        return Ok(Vec::new());
    };
    let n = code.n();
    let mut wanted = vec![false; max + 1];
    for &w in weights {
        wanted[w] = true;
    }
    with_packed!(n, P => {
        let sets = InfoSets::<P>::new(code);
        let mut out = Vec::new();
        crate::enumerate::for_each_low_weight(&sets, None, max, |c| {
            if wanted[c.weight() as usize] {
                out.push(c);
            }
        });
        out.sort_unstable();
        out.into_iter().map(|c| c.to_vector(n)).collect::<Vec<_>>()
    })
}

/// Binary MacWilliams transform: the weight distribution of the dual of an
/// `[n, k]` code with distribution `w`.
///
/// `B_j = 2^{-k} Σ_i A_i K_j(i)` with Krawtchouk polynomials
/// `K_j(i) = Σ_s (-1)^s C(i, s) C(n-i, j-s)`.
pub fn macwilliams_transform(w: &WeightDistribution, n: usize, k: usize) -> Result<WeightDistribution> {
    if w.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "distribution covers length {} but n = {n}",
            w.n()
        )));
    }
    if k >= 127 || w.total() != 1u128 << k {
        return Err(Error::InvalidArgument(format!(
            "distribution does not sum to 2^{k}"
        )));
    }
    let binom = binomials(n);
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc: i128 = 0;
        for (i, &a) in w.counts().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut kraw: i128 = 0;
            for s in 0..=j.min(i) {
                if j - s > n - i {
                    continue;
                }
                let term = binom[i][s] * binom[n - i][j - s];
                kraw += if s % 2 == 0 { term } else { -term };
            }
            acc += a as i128 * kraw;
        }
        let denom = 1i128 << k;
        if acc % denom != 0 || acc < 0 {
            return Err(Error::InvalidArgument(
                "input is not the weight distribution of a linear code".into(),
            ));
        }
        out.push((acc / denom) as u64);
    }
    Ok(WeightDistribution::new(out))
}

fn binomials(n: usize) -> Vec<Vec<i128>> {
    let mut b = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        b[i][0] = 1;
        for j in 1..=i {
            b[i][j] = b[i - 1][j - 1] + if j < i { b[i - 1][j] } else { 0 };
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    /// Direct enumeration oracle, independent of the Gray kernels.
    fn brute(code: &LinearCode) -> Vec<u64> {
        let mut counts = vec![0u64; code.n() + 1];
        code.for_each_codeword(|w| counts[w.weight()] += 1);
        counts
    }

    #[test]
    fn small_examples() {
        let wd = weight_distribution(&known::repetition2()).unwrap();
        assert_eq!(wd.counts(), &[1, 0, 1]);
        let g = weight_distribution(&known::golay24()).unwrap();
        assert_eq!(g.get(8), 759);
        assert_eq!(g.counts(), brute(&known::golay24()).as_slice());
        assert!(g.is_symmetric());
        assert_eq!(g.nonzero_weights(), vec![8, 12, 16, 24]);
    }

    #[test]
    fn budget_guard() {
        let g = known::golay24();
        assert!(matches!(
            weight_distribution_with_budget(&g, 10),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn portable_popcount_matches() {
        let g = known::golay24();
        assert_eq!(
            weight_distribution(&g).unwrap(),
            weight_distribution_portable(&g).unwrap()
        );
    }

    #[test]
    fn macwilliams_examples() {
        let r2 = weight_distribution(&known::repetition2()).unwrap();
        assert_eq!(macwilliams_transform(&r2, 2, 1).unwrap(), r2);
        let r4 = WeightDistribution::new(vec![1, 0, 0, 0, 1]);
        let even = macwilliams_transform(&r4, 4, 1).unwrap();
        assert_eq!(even.counts(), &[1, 0, 6, 0, 1]);
        let back = macwilliams_transform(&even, 4, 3).unwrap();
        assert_eq!(back, r4);
        let g = weight_distribution(&known::golay24()).unwrap();
        assert_eq!(macwilliams_transform(&g, 24, 12).unwrap(), g);
        assert!(macwilliams_transform(&WeightDistribution::new(vec![1, 1, 1]), 2, 1).is_err());
    }

    #[test]
    fn low_weight_counts_match_full() {
        let g = known::golay24();
        let full = weight_distribution(&g).unwrap();
        let low = low_weight_counts(&g, 12).unwrap();
        assert_eq!(&full.counts()[..=12], &low[..]);
        let words = codewords_of_weights(&g, &[8]).unwrap();
        assert_eq!(words.len(), 759);
        assert!(words.iter().all(|w| g.contains(w) && w.weight() == 8));
    }
}
