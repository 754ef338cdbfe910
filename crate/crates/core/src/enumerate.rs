//! Enumeration kernels shared by the weight, minimum-weight and covering
//! routines.
//!
//! Two strategies live here:
//!
//! * [`gray_histogram`] visits every vector of `offset + C` once, in Gray-code
//!   order, and histograms the weights. Cost `2^k`.
//! * [`InfoSets`] holds the code in systematic form on a sequence of
//!   information sets chosen greedily to be as disjoint as possible. Every
//!   vector of `offset + C` is determined by its restriction to any one
//!   information set, so enumerating the restrictions of weight `≤ r` on each
//!   set and counting how many coordinates each set contributes that no earlier
//!   set covered gives a certified lower bound on the weight of every vector
//!   not yet seen (the Brouwer–Zimmermann bound).

use rayon::prelude::*;

use crate::code::LinearCode;
use crate::gf2::packed::{popcount_dispatch, Packed};
use crate::gf2::{BitMatrix, BitVector};

/// One information set with the code in systematic form on it.
pub(crate) struct InfoSet<P> {
    /// `rows[i]` has a one in `pivots[i]` and zeros in every other pivot.
    pub rows: Vec<P>,
    pub pivots: Vec<usize>,
    pub mask: P,
    /// Pivot columns not covered by any earlier set.
    pub fresh: usize,
}

pub(crate) struct InfoSets<P> {
    pub k: usize,
    pub sets: Vec<InfoSet<P>>,
}

impl<P: Packed> InfoSets<P> {
    pub fn new(code: &LinearCode) -> Self {
        let n = code.n();
        let k = code.k();
        let mut used = vec![false; n];
        let mut sets = Vec::new();
        loop {
            let order: Vec<usize> = (0..n)
                .filter(|&c| !used[c])
                .chain((0..n).filter(|&c| used[c]))
                .collect();
            let (rows, pivots) = systematic(code.generator(), &order);
            let fresh = pivots.iter().filter(|&&p| !used[p]).count();
            if fresh == 0 {
                break;
            }
            let mut mask = P::default();
            for &p in &pivots {
                used[p] = true;
                mask = mask.with_bit(p);
            }
            sets.push(InfoSet {
                rows: rows.iter().map(P::from_vector).collect(),
                pivots,
                mask,
                fresh,
            });
            if used.iter().all(|&u| u) {
                break;
            }
        }
        InfoSets { k, sets }
    }

    /// Lower bound on the weight of any vector whose restriction to every
    /// information set has weight above `r`.
    pub fn lower_bound(&self, r: usize) -> usize {
        self.sets
            .iter()
            .map(|s| (r + 1).saturating_sub(self.k - s.fresh))
            .sum()
    }

    /// `v` shifted by a codeword so that it vanishes on the pivots of set `j`.
    pub fn reduce_on(&self, j: usize, v: P) -> P {
        let set = &self.sets[j];
        let mut out = v;
        for (row, &p) in set.rows.iter().zip(&set.pivots) {
            if out.bit(p) {
                out ^= *row;
            }
        }
        out
    }

    pub fn offsets(&self, v: Option<P>) -> Vec<P> {
        match v {
            None => vec![P::default(); self.sets.len()],
            Some(v) => (0..self.sets.len()).map(|j| self.reduce_on(j, v)).collect(),
        }
    }

    /// Smallest `r` after which every vector of weight `≤ max_weight` has
    /// been produced.
    pub fn radius_for(&self, max_weight: usize) -> usize {
        (0..=self.k)
            .find(|&r| self.lower_bound(r) > max_weight)
            .unwrap_or(self.k)
    }
}

/// Systematic form with pivots chosen in the given column order.
fn systematic(g: &BitMatrix, order: &[usize]) -> (Vec<BitVector>, Vec<usize>) {
    let mut rows: Vec<BitVector> = g.row_vectors().to_vec();
    let mut pivots = Vec::with_capacity(rows.len());
    let mut rank = 0;
    for &col in order {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Calls `f(base ^ rows[i1] ^ … ^ rows[ir])` for every `r`-subset. Stops and
/// returns `false` as soon as `f` does.
#[inline(always)]
pub(crate) fn for_each_combination<P: Packed>(
    rows: &[P],
    r: usize,
    base: P,
    mut f: impl FnMut(P) -> bool,
) -> bool {
    let k = rows.len();
    if r == 0 {
        return f(base);
    }
    if r > k {
        return true;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut acc = vec![base; r + 1];
    for i in 0..r {
        acc[i + 1] = acc[i] ^ rows[idx[i]];
    }
    loop {
        // Innermost index sweeps with one XOR per word.
        let last = r - 1;
        let prefix = acc[last];
        for &row in &rows[idx[last]..] {
            if !f(prefix ^ row) {
                return false;
            }
        }
        idx[last] = k - 1;
        // Advance the rightmost index that can still move.
        let mut i = last;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < k - r + i {
                break;
            }
        }
        idx[i] += 1;
        acc[i + 1] = acc[i] ^ rows[idx[i]];
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
            acc[j + 1] = acc[j] ^ rows[idx[j]];
        }
    }
}

/// Result of a minimum-weight search over a code or one of its cosets.
#[derive(Clone, Copy, Debug)]
pub(crate) struct MinSearch<P> {
    pub weight: usize,
    pub witness: P,
    /// `false` when the search stopped early because `weight <= floor`.
    pub exact: bool,
}

/// Brouwer–Zimmermann search for the minimum weight of `offset + C` (or of
/// `C \ {0}` when `offset` is `None`). Stops early once a vector of weight
/// `<= floor` is seen.
pub(crate) fn min_weight_search<P: Packed>(
    sets: &InfoSets<P>,
    offset: Option<P>,
    floor: usize,
) -> MinSearch<P> {
    let offsets = sets.offsets(offset);
    let is_coset = offset.is_some();
    let mut best = MinSearch {
        weight: usize::MAX,
        witness: P::default(),
        exact: false,
    };
    if is_coset {
        // the reduced offsets themselves are the r = 0 words
        for &o in &offsets {
            let w = o.weight() as usize;
            if w < best.weight {
                best.weight = w;
                best.witness = o;
            }
        }
    }
    for r in 1..=sets.k {
        if best.weight <= floor {
            return best;
        }
        if sets.lower_bound(r - 1) >= best.weight {
            best.exact = true;
            return best;
        }
        for (set, &base) in sets.sets.iter().zip(&offsets) {
            let mut w_best = best.weight;
            let mut wit = best.witness;
            popcount_dispatch!(true, || {
                for_each_combination(&set.rows, r, base, |c| {
                    let w = c.weight() as usize;
                    if w < w_best {
                        w_best = w;
                        wit = c;
                        if w <= floor {
                            return false;
                        }
                    }
                    true
                })
            });
            best.weight = w_best;
            best.witness = wit;
            if best.weight <= floor {
                return best;
            }
        }
    }
    best.exact = true;
    best
}

/// Calls `f` once for every vector of `offset + C` of weight at most
/// `max_weight` (the zero word of `C` included when `offset` is `None`).
pub(crate) fn for_each_low_weight<P: Packed>(
    sets: &InfoSets<P>,
    offset: Option<P>,
    max_weight: usize,
    mut f: impl FnMut(P),
) {
    let offsets = sets.offsets(offset);
    let radius = sets.radius_for(max_weight);
    let masks: Vec<P> = sets.sets.iter().map(|s| s.mask).collect();
    for (j, (set, &base)) in sets.sets.iter().zip(&offsets).enumerate() {
        let earlier = &masks[..j];
        for r in 0..=radius.min(sets.k) {
            popcount_dispatch!(true, || {
                for_each_combination(&set.rows, r, base, |c| {
                    if c.weight() as usize <= max_weight
                        && earlier.iter().all(|&m| (c & m).weight() as usize > radius)
                    {
                        f(c);
                    }
                    true
                })
            });
        }
    }
}

/// Exact counts of vectors of weight `0..=max_weight` in `offset + C`.
pub(crate) fn low_weight_histogram<P: Packed>(
    sets: &InfoSets<P>,
    offset: Option<P>,
    max_weight: usize,
) -> Vec<u64> {
    let mut counts = vec![0u64; max_weight + 1];
    for_each_low_weight(sets, offset, max_weight, |c| {
        counts[c.weight() as usize] += 1;
    });
    counts
}

const TABLE_BITS: usize = 16;
const CHUNK_BITS: usize = 6;

/// Weight histogram of every vector of `offset + span(rows)`, in Gray-code
/// order. The outer Gray sequence is cut into chunks that run in parallel;
/// the result does not depend on the thread count.
pub(crate) fn gray_histogram<P: Packed>(rows: &[P], offset: P, n: usize, native: bool) -> Vec<u64> {
    let k = rows.len();
    let low = k.min(TABLE_BITS);
    let mut table = vec![P::default(); 1 << low];
    for i in 1..table.len() {
        table[i] = table[i & (i - 1)] ^ rows[i.trailing_zeros() as usize];
    }
    let high = &rows[low..];
    let h = high.len();
    let chunk_bits = h.min(CHUNK_BITS);
    let per_chunk = 1u64 << (h - chunk_bits);
    let table = &table;
    (0..1u64 << chunk_bits)
        .into_par_iter()
        .map(|c| {
            let g0 = c * per_chunk;
            let gray0 = g0 ^ (g0 >> 1);
            let mut cur = offset;
            for (i, row) in high.iter().enumerate() {
                if (gray0 >> i) & 1 == 1 {
                    cur ^= *row;
                }
            }
            let stride = n + 1;
            let mut hist = vec![0u64; 4 * stride];
            popcount_dispatch!(native, || {
                gray_chunk(table, high, cur, g0, per_chunk, &mut hist, stride)
            });
            let mut out = vec![0u64; stride];
            for lane in hist.chunks_exact(stride) {
                for (o, x) in out.iter_mut().zip(lane) {
                    *o += x;
                }
            }
            out
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

#[inline(always)]
fn gray_chunk<P: Packed>(
    table: &[P],
    high: &[P],
    mut cur: P,
    g0: u64,
    len: u64,
    hist: &mut [u64],
    stride: usize,
) {
    let (h0, rest) = hist.split_at_mut(stride);
    let (h1, rest) = rest.split_at_mut(stride);
    let (h2, h3) = rest.split_at_mut(stride);
    for g in g0..g0 + len {
        if g != g0 {
            cur ^= high[g.trailing_zeros() as usize];
        }
        let mut quads = table.chunks_exact(4);
        for q in &mut quads {
            h0[(cur ^ q[0]).weight() as usize] += 1;
            h1[(cur ^ q[1]).weight() as usize] += 1;
            h2[(cur ^ q[2]).weight() as usize] += 1;
            h3[(cur ^ q[3]).weight() as usize] += 1;
        }
        for &t in quads.remainder() {
            h0[(cur ^ t).weight() as usize] += 1;
        }
    }
}
