//! Four-circulant codes with generator `( I₂ₙ | A B ; Bᵀ Aᵀ )` and the
//! exhaustive search over pairs of circulants.
//!
//! Because circulants commute, `XXᵀ = diag(AAᵀ + BBᵀ, AAᵀ + BBᵀ)` for the
//! right-hand block `X`, so the code is self-dual exactly when
//! `AAᵀ + BBᵀ = I`. In terms of first rows this reads
//! `autocorrelation(r_A) ⊕ autocorrelation(r_B) = (1, 0, …, 0)`.

use std::collections::BTreeSet;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearCode;
use crate::equivalence::partition_classes;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::minweight::has_weight_below;

/// First row `r_0 … r_{n-1}` of an `n × n` circulant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CirculantRow {
    bits: BitVector,
}

impl CirculantRow {
    pub fn new(bits: BitVector) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidArgument("circulant order must be positive".into()));
        }
        Ok(CirculantRow { bits })
    }

    /// Parses a `0`/`1` string such as `(0000001100111111)`.
    pub fn parse(s: &str) -> Result<Self> {
        CirculantRow::new(BitVector::parse_bits(s)?)
    }

    pub fn order(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    /// First row of the transposed circulant: `r'_j = r_{-j mod n}`.
    pub fn transposed(&self) -> CirculantRow {
        let n = self.order();
        let mut t = BitVector::zeros(n);
        for j in self.bits.support() {
            t.set((n - j) % n, true);
        }
        CirculantRow { bits: t }
    }

    /// Row `i` of the circulant, i.e. the first row shifted right `i` times.
    pub fn shifted(&self, i: usize) -> BitVector {
        let n = self.order();
        let mut out = BitVector::zeros(n);
        for j in self.bits.support() {
            out.set((j + i) % n, true);
        }
        out
    }
}

impl fmt::Display for CirculantRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.bits.to_bit_string())
    }
}

/// The pair of first rows defining a four-circulant code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FourCirculantSpec {
    pub ra: CirculantRow,
    pub rb: CirculantRow,
}

impl FourCirculantSpec {
    pub fn new(ra: CirculantRow, rb: CirculantRow) -> Result<Self> {
        if ra.order() != rb.order() {
            return Err(Error::DimensionMismatch(format!(
                "circulant orders {} and {} differ",
                ra.order(),
                rb.order()
            )));
        }
        Ok(FourCirculantSpec { ra, rb })
    }

    pub fn parse(ra: &str, rb: &str) -> Result<Self> {
        FourCirculantSpec::new(CirculantRow::parse(ra)?, CirculantRow::parse(rb)?)
    }

    pub fn order(&self) -> usize {
        self.ra.order()
    }
}

/// The full `n × n` circulant: entry `(i, j)` is `r[(j - i) mod n]`.
pub fn circulant(r: &CirculantRow) -> BitMatrix {
    let rows = (0..r.order()).map(|i| r.shifted(i)).collect();
    BitMatrix::from_rows(r.order(), rows).expect("rows share the order")
}

/// First row of `R Rᵀ`: component `s` is `Σ_j r_j r_{j+s}` mod 2.
pub fn autocorrelation(r: &CirculantRow) -> BitVector {
    let n = r.order();
    let mut out = BitVector::zeros(n);
    for s in 0..n {
        let shifted = r.shifted(s);
        out.set(s, r.bits.dot(&shifted));
    }
    out
}

/// `AAᵀ + BBᵀ = I`.
pub fn is_self_dual_pair(ra: &CirculantRow, rb: &CirculantRow) -> Result<bool> {
    if ra.order() != rb.order() {
        return Err(Error::DimensionMismatch(format!(
            "circulant orders {} and {} differ",
            ra.order(),
            rb.order()
        )));
    }
    let sum = autocorrelation(ra).xor(&autocorrelation(rb));
    Ok(sum == BitVector::from_support(ra.order(), &[0])?)
}

/// The `[4n, 2n]` code generated by `( I₂ₙ | A B ; Bᵀ Aᵀ )`. With
/// `require_self_dual` the pair condition is checked first.
pub fn four_circulant_code(spec: &FourCirculantSpec, require_self_dual: bool) -> Result<LinearCode> {
    if require_self_dual && !is_self_dual_pair(&spec.ra, &spec.rb)? {
        return Err(Error::NotSelfDual);
    }
    let n = spec.order();
    let (at, bt) = (spec.ra.transposed(), spec.rb.transposed());
    let mut rows = Vec::with_capacity(2 * n);
    for (left, right, offset) in [(&spec.ra, &spec.rb, 0), (&bt, &at, n)] {
        for i in 0..n {
            let unit = BitVector::from_support(2 * n, &[offset + i])?;
            rows.push(unit.concat(&left.shifted(i)).concat(&right.shifted(i)));
        }
    }
    LinearCode::from_rows(4 * n, rows)
}

// ---------------------------------------------------------------------------
// Search. Rows of order ≤ 32 are packed into u64 with coordinate 1 in the
// most significant of the low `n` bits, so integer order is lexicographic.

/// Filters applied to a candidate pair before any minimum-weight work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchFilters {
    /// Keep only `wt(r_A) + wt(r_B) ≡ 1 (mod 4)`: every generator row then
    /// has weight `2 mod 4`, so exactly the singly even codes survive.
    pub singly_even: bool,
    /// Lower bound on `wt(r_A) + wt(r_B)`. Generator rows weigh
    /// `1 + wt(r_A) + wt(r_B)`, so `target_d − 1` discards nothing with
    /// minimum weight `target_d`.
    pub min_weight_sum: usize,
}

/// The weight-sum threshold used for the order-16 searches.
pub const STANDARD_MIN_WEIGHT_SUM: usize = 13;

impl SearchFilters {
    /// "Weight sum ≡ 1 mod 4 and ≥ 13", the filters used for both the
    /// `d = 12` and `d = 10` searches at order 16. Orders whose weight sum
    /// cannot reach 13 fall back to [`SearchFilters::singly_even`].
    pub fn standard(order: usize, target_d: usize) -> Self {
        if 2 * order >= STANDARD_MIN_WEIGHT_SUM {
            SearchFilters { singly_even: true, min_weight_sum: STANDARD_MIN_WEIGHT_SUM }
        } else {
            SearchFilters::singly_even(target_d)
        }
    }

    /// The weakest filters that lose no singly even code of minimum weight
    /// `target_d`. For `d = 12` this coincides with the standard filters; for
    /// `d = 10` it also admits weight sum 9.
    pub fn singly_even(target_d: usize) -> Self {
        let floor = target_d.saturating_sub(1);
        // smallest value ≥ floor that is 1 mod 4
        let min_weight_sum = floor + (5 - floor % 4) % 4;
        SearchFilters { singly_even: true, min_weight_sum }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Progress file with `done:<a>..<b>` lines over the outer necklace index
    /// and `hit:<r_A>:<r_B>` lines; an interrupted search resumes from it.
    pub checkpoint: Option<PathBuf>,
    /// Outer necklaces per checkpoint chunk (default 64).
    pub chunk: Option<usize>,
}

/// One class of the search result.
#[derive(Clone, Debug)]
pub struct CirculantClass {
    pub spec: FourCirculantSpec,
    pub code: LinearCode,
    /// Symmetry-reduced candidate pairs that fell into this class.
    pub members: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub order: usize,
    pub target_d: usize,
    pub filters: SearchFilters,
    /// Self-dual pairs passing the filters, up to the row symmetries.
    pub pairs_tested: usize,
    /// Those with minimum weight exactly `target_d`.
    pub survivors: usize,
    pub classes: Vec<CirculantClass>,
}

pub const MAX_SEARCH_ORDER: usize = 24;

/// Self-dual singly even four-circulant codes of order `n` with minimum
/// weight exactly `target_d` passing [`SearchFilters::standard`], up to
/// equivalence.
pub fn search_four_circulant(n: usize, target_d: usize, options: &SearchOptions) -> Result<SearchOutcome> {
    search_four_circulant_with(n, target_d, SearchFilters::standard(n, target_d), options)
}

pub fn search_four_circulant_with(
    n: usize,
    target_d: usize,
    filters: SearchFilters,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    if n == 0 || n > MAX_SEARCH_ORDER {
        return Err(Error::TooLarge(format!(
            "search order must be in 1..={MAX_SEARCH_ORDER}, got {n}"
        )));
    }
    let sym = RowSymmetry::new(n);
    let necklaces = sym.necklaces();
    let e0 = 1u64 << (n - 1);

    // bucket necklaces by autocorrelation signature
    let mut by_ac: std::collections::HashMap<u64, Vec<u64>> = Default::default();
    for &r in &necklaces {
        by_ac.entry(sym.autocorrelation(r)).or_default().push(r);
    }

    let mut state = Checkpoint::load(options.checkpoint.as_ref(), n, target_d, &filters)?;
    let chunk = options.chunk.unwrap_or(64).max(1);
    let mut tested = state.tested;
    let mut hits: BTreeSet<(u64, u64)> = state.hits.clone();

    for start in (0..necklaces.len()).step_by(chunk) {
        let end = (start + chunk).min(necklaces.len());
        if state.done.contains(&(start, end)) {
            continue;
        }
        let found: Vec<(usize, Vec<(u64, u64)>)> = necklaces[start..end]
            .par_iter()
            .map(|&ra| {
                let mut local = Vec::new();
                let mut count = 0;
                let partners = by_ac
                    .get(&(sym.autocorrelation(ra) ^ e0))
                    .map(Vec::as_slice)
                    .unwrap_or(&[]);
                for &rb in partners {
                    let ws = (ra.count_ones() + rb.count_ones()) as usize;
                    if ws < filters.min_weight_sum || (filters.singly_even && ws % 4 != 1) {
                        continue;
                    }
                    if rb == 0 || sym.pair_orbit_min(ra, rb) != (ra, rb) {
                        continue;
                    }
                    count += 1;
                    let spec = sym.spec(ra, rb);
                    let code = four_circulant_code(&spec, false).expect("pair is self-dual");
                    let low = has_weight_below(&code, target_d).expect("length ≤ 512");
                    if !low && has_weight_below(&code, target_d + 1).expect("length ≤ 512") {
                        local.push((ra, rb));
                    }
                }
                (count, local)
            })
            .collect();
        for (count, local) in found {
            tested += count;
            hits.extend(local.iter().copied());
            state.append(start, end, count, &local)?;
        }
    }

    let survivors: Vec<(FourCirculantSpec, LinearCode)> = hits
        .iter()
        .map(|&(ra, rb)| {
            let spec = sym.spec(ra, rb);
            let code = four_circulant_code(&spec, false)?;
            Ok((spec, code))
        })
        .collect::<Result<_>>()?;
    let codes: Vec<LinearCode> = survivors.iter().map(|(_, c)| c.clone()).collect();
    let partition = partition_classes(&codes)?;
    let classes = partition
        .into_iter()
        .map(|class| CirculantClass {
            spec: survivors[class.representative].0.clone(),
            code: survivors[class.representative].1.clone(),
            members: class.members.len(),
        })
        .collect();
    Ok(SearchOutcome {
        order: n,
        target_d,
        filters,
        pairs_tested: tested,
        survivors: survivors.len(),
        classes,
    })
}

/// Symmetries of first-row pairs that preserve the code up to equivalence:
/// independent cyclic shifts of `r_A` and `r_B`, a common multiplier
/// `j ↦ uj` with `u` a unit mod `n`, and swapping `A` with `B`.
pub(crate) struct RowSymmetry {
    n: usize,
    mask: u64,
    units: Vec<usize>,
}

impl RowSymmetry {
    pub(crate) fn new(n: usize) -> Self {
        let units = (1..=n.max(1)).filter(|&u| gcd(u, n) == 1).collect();
        RowSymmetry { n, mask: if n == 64 { !0 } else { (1u64 << n) - 1 }, units }
    }

    /// Bit for coordinate `j` (0-based) in the MSB-first packing.
    fn bit(&self, j: usize) -> u64 {
        1u64 << (self.n - 1 - j)
    }

    fn rotate(&self, r: u64, s: usize) -> u64 {
        let s = s % self.n;
        if s == 0 {
            return r;
        }
        ((r << s) | (r >> (self.n - s))) & self.mask
    }

    /// Smallest rotation.
    pub(crate) fn necklace(&self, r: u64) -> u64 {
        (0..self.n).map(|s| self.rotate(r, s)).min().unwrap()
    }

    /// Necklace representatives in increasing order.
    pub(crate) fn necklaces(&self) -> Vec<u64> {
        (0..=self.mask).filter(|&r| self.necklace(r) == r).collect()
    }

    pub(crate) fn autocorrelation(&self, r: u64) -> u64 {
        let mut out = 0;
        for s in 0..self.n {
            if (r & self.rotate(r, s)).count_ones() % 2 == 1 {
                out |= self.bit(s);
            }
        }
        out
    }

    fn multiply(&self, r: u64, u: usize) -> u64 {
        let mut out = 0;
        for j in 0..self.n {
            if r & self.bit(j) != 0 {
                out |= self.bit((j * u) % self.n);
            }
        }
        out
    }

    /// Least image of the necklace pair under multipliers and swap.
    pub(crate) fn pair_orbit_min(&self, ra: u64, rb: u64) -> (u64, u64) {
        let mut best = (ra, rb);
        for &u in &self.units {
            let a = self.necklace(self.multiply(ra, u));
            let b = self.necklace(self.multiply(rb, u));
            best = best.min((a, b)).min((b, a));
        }
        best
    }

    pub(crate) fn spec(&self, ra: u64, rb: u64) -> FourCirculantSpec {
        let row = |r: u64| {
            let bits: Vec<bool> = (0..self.n).map(|j| r & self.bit(j) != 0).collect();
            CirculantRow { bits: BitVector::from_bools(&bits) }
        };
        FourCirculantSpec { ra: row(ra), rb: row(rb) }
    }

    fn pack(&self, r: &CirculantRow) -> u64 {
        r.bits.support().into_iter().fold(0, |acc, j| acc | self.bit(j))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct Checkpoint {
    file: Option<File>,
    done: BTreeSet<(usize, usize)>,
    hits: BTreeSet<(u64, u64)>,
    tested: usize,
    n: usize,
}

impl Checkpoint {
    fn load(path: Option<&PathBuf>, n: usize, target_d: usize, filters: &SearchFilters) -> Result<Self> {
        let mut cp = Checkpoint { file: None, done: BTreeSet::new(), hits: BTreeSet::new(), tested: 0, n };
        let Some(path) = path else {
            return Ok(cp);
        };
        let header = format!(
            "search:order={n}:d={target_d}:sum>={}{}",
            filters.min_weight_sum,
            if filters.singly_even { ":mod4" } else { "" }
        );
        let io = |e: std::io::Error| Error::InvalidArgument(format!("{}: {e}", path.display()));
        if path.exists() {
            let sym = RowSymmetry::new(n);
            let reader = BufReader::new(File::open(path).map_err(io)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line.map_err(io)?;
                let line = line.trim();
                let lineno = i + 1;
                if i == 0 {
                    if line != header {
                        return Err(Error::parse(lineno, format!("checkpoint is for `{line}`, not `{header}`")));
                    }
                    continue;
                }
                if let Some(rest) = line.strip_prefix("done:") {
                    let (range, count) = rest.split_once(':').unwrap_or((rest, "0"));
                    let (a, b) = range
                        .split_once("..")
                        .ok_or_else(|| Error::parse(lineno, "expected done:<a>..<b>:<count>"))?;
                    let parse = |s: &str| s.parse::<usize>().map_err(|e| Error::parse(lineno, e.to_string()));
                    cp.done.insert((parse(a)?, parse(b)?));
                    cp.tested += parse(count)?;
                } else if let Some(rest) = line.strip_prefix("hit:") {
                    let (a, b) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::parse(lineno, "expected hit:<r_A>:<r_B>"))?;
                    let ra = CirculantRow::parse(a).map_err(|e| Error::parse(lineno, e.to_string()))?;
                    let rb = CirculantRow::parse(b).map_err(|e| Error::parse(lineno, e.to_string()))?;
                    if ra.order() != n || rb.order() != n {
                        return Err(Error::parse(lineno, "row order does not match the search"));
                    }
                    cp.hits.insert((sym.pack(&ra), sym.pack(&rb)));
                } else if !line.is_empty() {
                    return Err(Error::parse(lineno, format!("unrecognised checkpoint line `{line}`")));
                }
            }
            // hits of an unfinished chunk are written before its done marker,
            // so they may be re-found; the set absorbs duplicates
            cp.file = Some(OpenOptions::new().append(true).open(path).map_err(io)?);
        } else {
            let mut f = File::create(path).map_err(io)?;
            writeln!(f, "{header}").map_err(io)?;
            cp.file = Some(f);
        }
        Ok(cp)
    }

    fn append(&mut self, start: usize, end: usize, count: usize, hits: &[(u64, u64)]) -> Result<()> {
        let Some(f) = self.file.as_mut() else {
            return Ok(());
        };
        let sym = RowSymmetry::new(self.n);
        let io = |e: std::io::Error| Error::InvalidArgument(format!("checkpoint write failed: {e}"));
        for &(ra, rb) in hits {
            let spec = sym.spec(ra, rb);
            writeln!(f, "hit:{}:{}", spec.ra.bits, spec.rb.bits).map_err(io)?;
        }
        writeln!(f, "done:{start}..{end}:{count}").map_err(io)?;
        f.flush().map_err(io)
    }
}
