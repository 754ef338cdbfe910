//! Permutation equivalence of binary codes.
//!
//! A cheap [`Fingerprint`] separates most inequivalent codes. The decision
//! itself uses a [`CanonicalForm`]: the coordinates are canonically labeled
//! through the incidence graph between coordinates and the codewords of the
//! lowest weights (the window grows from the minimum weight until those words
//! span the code), and the relabeled code's reduced generator is the
//! certificate. Any equivalence maps words of a given weight to words of the
//! same weight, so the labeling is well defined up to automorphisms.

mod canon;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::minweight::min_weight;
use crate::weights::codewords_of_weights;

use canon::{canonical_labeling, Incidence};

/// Above this many word pairs the intersection profile is left out of the
/// fingerprint rather than sampled, since a sample would not be invariant.
pub const MAX_INTERSECTION_PAIRS: usize = 4_000_000;

/// Permutation-invariant summary of a code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub a_d: u64,
    pub a_d2: u64,
    /// Per coordinate: how many words of weight `d` and `d + 2` contain it;
    /// sorted.
    pub incidence: Vec<(u32, u32)>,
    /// `profile[s]` is the number of unordered pairs of weight-`d` words
    /// meeting in `s` coordinates.
    pub intersections: Option<Vec<u64>>,
}

pub fn fingerprint(code: &LinearCode) -> Result<Fingerprint> {
    let n = code.n();
    let d = min_weight(code)?;
    let words = codewords_of_weights(code, &[d, d + 2])?;
    let (low, next): (Vec<&BitVector>, Vec<&BitVector>) = words.iter().partition(|w| w.weight() == d);
    let mut per_coord = vec![(0u32, 0u32); n];
    for w in &low {
        for c in w.support() {
            per_coord[c].0 += 1;
        }
    }
    for w in &next {
        for c in w.support() {
            per_coord[c].1 += 1;
        }
    }
    per_coord.sort_unstable();
    let m = low.len();
    let intersections = (m * m.saturating_sub(1) / 2 <= MAX_INTERSECTION_PAIRS).then(|| {
        let mut profile = vec![0u64; d + 1];
        for i in 0..m {
            for j in i + 1..m {
                profile[low[i].and_weight(low[j])] += 1;
            }
        }
        profile
    });
    Ok(Fingerprint {
        n,
        k: code.k(),
        d,
        a_d: low.len() as u64,
        a_d2: next.len() as u64,
        incidence: per_coord,
        intersections,
    })
}

/// Canonical representative of a code's equivalence class.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub k: usize,
    /// Word weights used for the labeling.
    pub window: Vec<usize>,
    /// Reduced generator of the relabeled code.
    pub rows: Vec<BitVector>,
    /// Coordinate `i` of the input goes to position `perm[i]`.
    #[serde(skip)]
    pub perm: Vec<usize>,
    /// Search-tree leaves visited.
    pub leaves: usize,
    /// Nontrivial automorphisms met during the search.
    pub automorphisms_found: usize,
}

impl CanonicalForm {
    /// The generator rows as lowercase hex, one row after another.
    pub fn to_hex(&self) -> String {
        self.rows.iter().map(BitVector::to_hex).collect::<Vec<_>>().join("")
    }

    fn key(&self) -> (usize, usize, &[BitVector]) {
        (self.n, self.k, &self.rows)
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonicalForm {}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Lowest weights whose words span the code, with those words.
fn spanning_window(code: &LinearCode) -> Result<(Vec<usize>, Vec<BitVector>)> {
    let d = min_weight(code)?;
    let mut window = Vec::new();
    let mut words = Vec::new();
    for w in d..=code.n() {
        let found = codewords_of_weights(code, &[w])?;
        if found.is_empty() {
            continue;
        }
        window.push(w);
        words.extend(found);
        let span = BitMatrix::from_rows(code.n(), words.clone())?.rank();
        if span == code.k() {
            return Ok((window, words));
        }
    }
    unreachable!("all nonzero codewords span the code")
}

pub fn canonical_form(code: &LinearCode) -> Result<CanonicalForm> {
    let (window, words) = spanning_window(code)?;
    let supports: Vec<Vec<usize>> = words.iter().map(BitVector::support).collect();
    let classes: Vec<u32> = words
        .iter()
        .map(|w| window.iter().position(|&x| x == w.weight()).unwrap() as u32)
        .collect();
    let g = Incidence::new(code.n(), &supports, &classes);
    let certify = |perm: &[usize]| -> Vec<u8> {
        let c = code.permuted(perm).expect("labeling is a permutation");
        c.rows().iter().flat_map(|r| r.words().iter().flat_map(|w| w.to_le_bytes())).collect()
    };
    let lab = canonical_labeling(&g, certify);
    let rows = code.permuted(&lab.perm)?.rows().to_vec();
    Ok(CanonicalForm { n: code.n(), k: code.k(), window, rows, perm: lab.perm, leaves: lab.leaves, automorphisms_found: lab.automorphisms.len() })
}

/// A coordinate permutation `π` with `c1.permuted(π) == c2`, if any.
pub fn find_equivalence(c1: &LinearCode, c2: &LinearCode) -> Result<Option<Vec<usize>>> {
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return Ok(None);
    }
    if fingerprint(c1)? != fingerprint(c2)? {
        return Ok(None);
    }
    let (f1, f2) = (canonical_form(c1)?, canonical_form(c2)?);
    if f1 != f2 {
        return Ok(None);
    }
    // c1·λ₁ = c2·λ₂, so λ₂⁻¹ ∘ λ₁ carries c1 to c2
    let mut inv2 = vec![0; c1.n()];
    for (i, &p) in f2.perm.iter().enumerate() {
        inv2[p] = i;
    }
    let pi: Vec<usize> = f1.perm.iter().map(|&p| inv2[p]).collect();
    debug_assert_eq!(&c1.permuted(&pi)?, c2);
    Ok(Some(pi))
}

/// Whether some coordinate permutation maps `c1` onto `c2`. Codes with
/// different parameters are simply not equivalent.
pub fn are_equivalent(c1: &LinearCode, c2: &LinearCode) -> Result<bool> {
    Ok(find_equivalence(c1, c2)?.is_some())
}

/// One class of [`partition_classes`], as indices into the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    /// Smallest member index.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Splits `codes` into equivalence classes: by fingerprint first, then by
/// canonical form inside fingerprint groups with more than one member.
/// Classes are ordered by their first member, so the output depends only on
/// the input order.
pub fn partition_classes(codes: &[LinearCode]) -> Result<Vec<EquivalenceClass>> {
    let prints: Vec<Fingerprint> = codes.par_iter().map(fingerprint).collect::<Result<_>>()?;
    let mut groups: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, f) in prints.iter().enumerate() {
        groups.entry(f).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let split: Vec<Vec<Vec<usize>>> = groups
        .into_par_iter()
        .map(|group| -> Result<Vec<Vec<usize>>> {
            if group.len() == 1 {
                return Ok(vec![group]);
            }
            let mut by_form: BTreeMap<CanonicalForm, Vec<usize>> = BTreeMap::new();
            for &i in &group {
                by_form.entry(canonical_form(&codes[i])?).or_default().push(i);
            }
            Ok(by_form.into_values().collect())
        })
        .collect::<Result<_>>()?;
    let mut classes: Vec<EquivalenceClass> = split
        .into_iter()
        .flatten()
        .map(|members| EquivalenceClass { representative: members[0], members })
        .collect();
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}

/// Largest length accepted by [`brute_force_equivalence`].
pub const BRUTE_FORCE_MAX_N: usize = 16;

/// Exhaustive backtracking search for a permutation carrying `c1` onto `c2`,
/// independent of the canonical labeling. Coordinates are matched by how
/// many codewords of each weight contain them, pairs by how many codewords of
/// each weight contain both. Exponential in the worst case; `n ≤ 16`.
pub fn brute_force_equivalence(c1: &LinearCode, c2: &LinearCode) -> Result<Option<Vec<usize>>> {
    let n = c1.n();
    if n > BRUTE_FORCE_MAX_N || c1.k() > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge(format!("brute force needs n, k ≤ {BRUTE_FORCE_MAX_N}")));
    }
    if c2.n() != n || c2.k() != c1.k() {
        return Ok(None);
    }
    let (p1, p2) = (pair_profile(c1), pair_profile(c2));
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        n: usize,
        p1: &[Vec<Vec<u32>>],
        p2: &[Vec<Vec<u32>>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        c1: &LinearCode,
        c2: &LinearCode,
    ) -> Option<Vec<usize>> {
        if i == n {
            let ok = c1.permuted(sigma).map(|c| &c == c2).unwrap_or(false);
            return ok.then(|| sigma.clone());
        }
        for j in 0..n {
            if used[j] || p1[i][i] != p2[j][j] {
                continue;
            }
            if (0..i).any(|a| p1[a][i] != p2[sigma[a]][j]) {
                continue;
            }
            sigma[i] = j;
            used[j] = true;
            if let Some(found) = extend(i + 1, n, p1, p2, sigma, used, c1, c2) {
                return Some(found);
            }
            used[j] = false;
        }
        sigma[i] = usize::MAX;
        None
    }
    Ok(extend(0, n, &p1, &p2, &mut sigma, &mut used, c1, c2))
}

/// `out[a][b][w]`: number of codewords of weight `w` containing `a` and `b`.
fn pair_profile(code: &LinearCode) -> Vec<Vec<Vec<u32>>> {
    let n = code.n();
    let mut out = vec![vec![vec![0u32; n + 1]; n]; n];
    code.for_each_codeword(|w| {
        let s = w.support();
        let wt = s.len();
        for &a in &s {
            for &b in &s {
                out[a][b][wt] += 1;
            }
        }
    });
    out
}
