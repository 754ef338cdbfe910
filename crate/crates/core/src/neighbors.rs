//! Self-dual neighbors: `D = ⟨C ∩ ⟨x⟩⊥, x⟩` for an even-weight `x ∉ C`.
//!
//! Since `C` is self-dual, `C ∩ ⟨x⟩⊥` only depends on the coset `x + C`, and
//! each such coset gives exactly two neighbors: `⟨C⁰, x⟩` and `⟨C⁰, x + y⟩`
//! for any `y ∈ C \ C⁰`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{check_len, LinearCode};
use crate::equivalence::{fingerprint, Fingerprint};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::minweight::{has_weight_below, min_weight};
use crate::shadow::{parity_class, ParityClass, ShadowCosets};
use crate::weights::codewords_of_weights;

/// `parent:1,5,9,…` — a parent code name and the 1-based support of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NeighborDescriptor {
    pub parent: String,
    pub support: Vec<usize>,
}

impl NeighborDescriptor {
    pub fn new(parent: impl Into<String>, mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        support.dedup();
        NeighborDescriptor { parent: parent.into(), support }
    }

    pub fn from_vector(parent: impl Into<String>, x: &BitVector) -> Self {
        NeighborDescriptor::new(parent, x.support().into_iter().map(|i| i + 1).collect())
    }

    pub fn vector(&self, n: usize) -> Result<BitVector> {
        BitVector::from_support_one_based(n, &self.support)
    }
}

impl fmt::Display for NeighborDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.support.iter().map(usize::to_string).collect();
        write!(f, "{}:{}", self.parent, s.join(","))
    }
}

impl FromStr for NeighborDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (parent, list) = s
            .trim()
            .rsplit_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected parent:support, got `{s}`")))?;
        Ok(NeighborDescriptor::new(parent, parse_support(list)?))
    }
}

/// Parses `1,2,3` or `{1, 2, 3}` into 1-based indices.
pub fn parse_support(s: &str) -> Result<Vec<usize>> {
    s.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad coordinate `{t}`")))
        })
        .collect()
}

/// `⟨C ∩ ⟨x⟩⊥, x⟩`, a self-dual code meeting `C` in dimension `n/2 − 1`.
pub fn neighbor(code: &LinearCode, x: &BitVector) -> Result<LinearCode> {
    code.require_self_dual()?;
    check_len(code.n(), x)?;
    if x.weight() % 2 == 1 {
        return Err(Error::OddWeight);
    }
    if code.contains(x) {
        return Err(Error::NotANeighbor);
    }
    code.orthogonal_subcode(x)?.extended_by(x)
}

/// The two doubly even self-dual codes `C₀ ∪ C₁` and `C₀ ∪ C₃` through the
/// doubly even subcode of a singly even code of length divisible by 8.
pub fn doubly_even_neighbors(code: &LinearCode) -> Result<(LinearCode, LinearCode)> {
    if code.n() % 8 != 0 {
        return Err(Error::NotApplicable(format!(
            "length {} is not divisible by 8",
            code.n()
        )));
    }
    let cosets = ShadowCosets::new(code)?;
    let c0 = cosets.c0.as_ref().expect("n ≥ 8 leaves C₀ nonzero");
    Ok((c0.extended_by(&cosets.c1_rep)?, c0.extended_by(&cosets.c3_rep)?))
}

/// The solution of `M xᵀ = 1ᵀ` over even-weight `x`, where the rows of `M`
/// are the weight-10 codewords.
#[derive(Clone, Debug)]
pub struct Weight10Solution {
    /// Lexicographically least solution in its coset of `C`.
    pub x: BitVector,
    /// The even-weight solutions form a single coset `x + C`, so the
    /// neighbors below are the only candidates.
    pub unique: bool,
    /// Dimension of the even-weight solution space minus `k`.
    pub extra_dimensions: usize,
    /// `C⁰ = C ∩ ⟨x⟩⊥`.
    pub subcode: LinearCode,
    /// Number of weight-10 codewords (rows of `M`).
    pub equations: usize,
    y: BitVector,
}

impl Weight10Solution {
    /// `⟨C⁰, x⟩` and `⟨C⁰, x + y⟩` with `y ∈ C \ C⁰`.
    pub fn neighbors(&self) -> Result<(LinearCode, LinearCode)> {
        Ok((
            self.subcode.extended_by(&self.x)?,
            self.subcode.extended_by(&self.x.xor(&self.y))?,
        ))
    }
}

/// Solves `M xᵀ = 1ᵀ` for a self-dual code of minimum weight 10. `Ok(None)`
/// when there is no even-weight solution, so that no neighbor avoids all
/// weight-10 words.
pub fn weight10_neighbor_vector(code: &LinearCode) -> Result<Option<Weight10Solution>> {
    code.require_self_dual()?;
    let n = code.n();
    let rows = codewords_of_weights(code, &[10])?;
    if rows.is_empty() {
        return Err(Error::NotApplicable("the code has no codewords of weight 10".into()));
    }
    let d = min_weight(code)?;
    if d != 10 {
        return Err(Error::PreconditionFailed(format!("minimum weight is {d}, not 10")));
    }
    let equations = rows.len();
    // even weight: x · 1 = 0
    let mut m = BitMatrix::from_rows(n, rows)?;
    m.push_row(BitVector::ones(n));
    let mut rhs = BitVector::ones(equations + 1);
    rhs.set(equations, false);
    let Some((particular, kernel)) = m.solve(&rhs)? else {
        return Ok(None);
    };
    // C lies in the kernel; anything beyond it is extra freedom
    let kernel_dim = kernel.rank();
    let x = code.reduce(&particular);
    let subcode = code.orthogonal_subcode(&x)?;
    let y = code
        .rows()
        .iter()
        .find(|r| r.dot(&x))
        .cloned()
        .expect("x ∉ C⊥ = C");
    Ok(Some(Weight10Solution {
        x,
        unique: kernel_dim == code.k(),
        extra_dimensions: kernel_dim - code.k(),
        subcode,
        equations,
        y,
    }))
}

/// How [`enumerate_neighbors`] chooses the vectors `x`.
#[derive(Clone, Debug)]
pub enum NeighborMode {
    /// Replays explicit 1-based supports, in order, without deduplication.
    Targeted(Vec<Vec<usize>>),
    /// Every even-weight `x` of weight `≤ max_weight` in increasing weight
    /// and lexicographic order; each coset `x + C` is used once, giving its
    /// two neighbors.
    Bounded { max_weight: usize },
    /// `samples` uniformly random even-weight vectors, or random vectors of
    /// exactly `weight` when given.
    Random { samples: usize, weight: Option<usize>, seed: u64 },
}

/// Which neighbors to keep.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeighborFilter {
    pub min_weight: usize,
    pub singly_even_only: bool,
}

#[derive(Clone, Debug)]
pub struct NeighborResult {
    pub descriptor: NeighborDescriptor,
    pub code: LinearCode,
}

#[derive(Clone, Debug)]
pub struct NeighborEnumeration {
    pub results: Vec<NeighborResult>,
    /// Vectors `x` looked at.
    pub examined: usize,
    /// The budget ran out before the mode was exhausted.
    pub truncated: bool,
}

/// Neighbors of a self-dual `code`. `budget` caps the number of vectors `x`
/// examined. Results from the bounded and random modes are deduplicated by
/// code equality and then by [`Fingerprint`].
pub fn enumerate_neighbors(
    code: &LinearCode,
    parent: &str,
    mode: &NeighborMode,
    filter: NeighborFilter,
    budget: usize,
) -> Result<NeighborEnumeration> {
    code.require_self_dual()?;
    let n = code.n();
    let mut out = NeighborEnumeration { results: Vec::new(), examined: 0, truncated: false };
    let keep = |d: &LinearCode| -> Result<bool> {
        if filter.min_weight > 0 && has_weight_below(d, filter.min_weight)? {
            return Ok(false);
        }
        Ok(!filter.singly_even_only || parity_class(d)? == ParityClass::SinglyEven)
    };

    if let NeighborMode::Targeted(supports) = mode {
        for s in supports {
            if out.examined == budget {
                out.truncated = true;
                break;
            }
            out.examined += 1;
            let x = BitVector::from_support_one_based(n, s)?;
            let d = neighbor(code, &x)?;
            if keep(&d)? {
                out.results.push(NeighborResult { descriptor: NeighborDescriptor::new(parent, s.clone()), code: d });
            }
        }
        return Ok(out);
    }

    let mut seen_codes: HashSet<LinearCode> = HashSet::new();
    let mut seen_prints: HashSet<Fingerprint> = HashSet::new();
    let mut cosets: HashMap<BitVector, usize> = HashMap::new();
    let mut consider = |x: BitVector, out: &mut NeighborEnumeration| -> Result<()> {
        if x.weight() % 2 == 1 || code.contains(&x) {
            return Ok(());
        }
        let syndrome = code.reduce(&x);
        let used = cosets.entry(syndrome).or_insert(0);
        if *used == 2 {
            return Ok(());
        }
        let d = neighbor(code, &x)?;
        if !seen_codes.insert(d.clone()) {
            return Ok(());
        }
        *used += 1;
        if keep(&d)? && seen_prints.insert(fingerprint(&d)?) {
            out.results.push(NeighborResult { descriptor: NeighborDescriptor::from_vector(parent, &x), code: d });
        }
        Ok(())
    };

    match mode {
        NeighborMode::Targeted(_) => unreachable!(),
        NeighborMode::Bounded { max_weight } => {
            'outer: for w in (2..=(*max_weight).min(n)).step_by(2) {
                let mut stop = false;
                let mut err = None;
                for_each_subset(n, w, |s| {
                    if out.examined == budget {
                        stop = true;
                        return false;
                    }
                    out.examined += 1;
                    let x = BitVector::from_support(n, s).expect("in range");
                    if let Err(e) = consider(x, &mut out) {
                        err = Some(e);
                        return false;
                    }
                    true
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if stop {
                    out.truncated = true;
                    break 'outer;
                }
            }
        }
        NeighborMode::Random { samples, weight, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*samples {
                if out.examined == budget {
                    out.truncated = true;
                    break;
                }
                out.examined += 1;
                let x = match weight {
                    Some(w) => {
                        let picked = rand::seq::index::sample(&mut rng, n, (*w).min(n)).into_vec();
                        BitVector::from_support(n, &picked)?
                    }
                    None => {
                        let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
                        let mut v = BitVector::from_bools(&bits);
                        if v.weight() % 2 == 1 {
                            v.flip(n - 1);
                        }
                        v
                    }
                };
                consider(x, &mut out)?;
            }
        }
    }
    Ok(out)
}

/// Calls `f` on every `w`-subset of `0..n` in lexicographic order until it
/// returns false.
fn for_each_subset(n: usize, w: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if w > n {
        return;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - w + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
