use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowEchelon};

/// A binary linear `[n, k]` code.
///
/// The generator is kept in reduced row echelon form, so two `LinearCode`s
/// compare equal exactly when they are the same subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    generator: BitMatrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Builds the code spanned by the rows of `generator`. Dependent rows are
    /// dropped; the zero code is rejected.
    pub fn from_generator(generator: &BitMatrix) -> Result<Self> {
        let ech = generator.rref();
        Self::from_echelon(ech)
    }

    pub fn from_rows(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        Self::from_generator(&BitMatrix::from_rows(n, rows)?)
    }

    fn from_echelon(ech: RowEchelon) -> Result<Self> {
        if ech.rank == 0 {
            return Err(Error::Degenerate);
        }
        let n = ech.reduced.cols();
        Ok(LinearCode {
            n,
            generator: ech.basis(),
            pivots: ech.pivots,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Generator matrix in reduced row echelon form.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn rows(&self) -> &[BitVector] {
        self.generator.row_vectors()
    }

    /// Pivot (information) columns of the echelon generator.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the code: zero iff `v` is a codeword, otherwise the
    /// lexicographically smallest member of the coset `v + C`.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.rows().iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.n && self.reduce(v).is_zero()
    }

    /// Every pair of generator rows, a row with itself included, is orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.k() == self.n && self.is_self_orthogonal()
    }

    pub(crate) fn require_self_dual(&self) -> Result<()> {
        if self.is_self_dual() {
            Ok(())
        } else {
            Err(Error::NotSelfDual)
        }
    }

    /// The dual code `C⊥`. Fails with [`Error::Degenerate`] when `C` is the
    /// whole space.
    pub fn dual(&self) -> Result<LinearCode> {
        LinearCode::from_generator(&self.generator.nullspace())
    }

    /// `C ∩ ⟨x⟩⊥`: the codewords orthogonal to `x`.
    pub fn orthogonal_subcode(&self, x: &BitVector) -> Result<LinearCode> {
        check_len(self.n, x)?;
        let mut rows: Vec<BitVector> = self.rows().to_vec();
        let Some(p) = rows.iter().position(|r| r.dot(x)) else {
            return Ok(self.clone());
        };
        let pivot = rows.swap_remove(p);
        for r in rows.iter_mut() {
            if r.dot(x) {
                r.xor_assign(&pivot);
            }
        }
        LinearCode::from_rows(self.n, rows)
    }

    /// `⟨C, v⟩`.
    pub fn extended_by(&self, v: &BitVector) -> Result<LinearCode> {
        check_len(self.n, v)?;
        let mut g = self.generator.clone();
        g.push_row(v.clone());
        LinearCode::from_generator(&g)
    }

    /// Sum of two codes of the same length.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("codes of different length".into()));
        }
        LinearCode::from_generator(&self.generator.stack(&other.generator))
    }

    /// `dim(C ∩ D) = dim C + dim D − dim(C + D)`.
    pub fn intersection_dim(&self, other: &LinearCode) -> Result<usize> {
        let sum = self.sum(other)?;
        Ok(self.k() + other.k() - sum.k())
    }

    /// `C ∩ D`, computed as `(C⊥ + D⊥)⊥`.
    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("codes of different length".into()));
        }
        let perp = self.generator.nullspace().stack(&other.generator.nullspace());
        LinearCode::from_generator(&perp.nullspace())
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.rows().iter().all(|r| other.contains(r))
    }

    /// Applies a coordinate permutation: coordinate `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LinearCode> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        LinearCode::from_generator(&self.generator.permute_columns(perm))
    }

    /// Calls `f` on every codeword, in Gray-code order. Meant for small `k`.
    pub fn for_each_codeword(&self, mut f: impl FnMut(&BitVector)) {
        let rows = self.rows();
        let mut cur = BitVector::zeros(self.n);
        f(&cur);
        for g in 1u64..(1u64 << self.k()) {
            cur.xor_assign(&rows[g.trailing_zeros() as usize]);
            f(&cur);
        }
    }
}

pub(crate) fn check_len(n: usize, v: &BitVector) -> Result<()> {
    if v.len() != n {
        Err(Error::DimensionMismatch(format!(
            "vector of length {} for a code of length {n}",
            v.len()
        )))
    } else {
        Ok(())
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}] {:?}", self.n, self.k(), self.generator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(n: usize) -> LinearCode {
        LinearCode::from_rows(n, vec![BitVector::ones(n)]).unwrap()
    }

    #[test]
    fn zero_code_is_rejected() {
        let g = BitMatrix::zeros(2, 4);
        assert_eq!(LinearCode::from_generator(&g), Err(Error::Degenerate));
        let full = LinearCode::from_generator(&BitMatrix::identity(3)).unwrap();
        assert_eq!(full.dual(), Err(Error::Degenerate));
    }

    #[test]
    fn dual_examples() {
        let r2 = rep(2);
        assert_eq!(r2.dual().unwrap(), r2);
        assert!(r2.is_self_dual());
        let d = rep(4).dual().unwrap();
        assert_eq!(d.k(), 3);
        let mut count = 0;
        d.for_each_codeword(|w| {
            assert_eq!(w.weight() % 2, 0);
            count += 1;
        });
        assert_eq!(count, 8);
        assert_eq!(d.dual().unwrap(), rep(4));
    }

    #[test]
    fn intersection_and_sum() {
        let a = LinearCode::from_generator(&BitMatrix::from_bit_strings(&["1100", "0011"])).unwrap();
        let b = LinearCode::from_generator(&BitMatrix::from_bit_strings(&["1010", "0101"])).unwrap();
        assert_eq!(a.intersection_dim(&b).unwrap(), 1);
        assert_eq!(a.intersection(&b).unwrap(), rep(4));
    }

    #[test]
    fn reduce_gives_lexicographic_minimum() {
        let c = LinearCode::from_generator(&BitMatrix::from_bit_strings(&["1100", "0011"])).unwrap();
        let v = BitVector::parse_bits("1110").unwrap();
        let mut best = None::<BitVector>;
        for w in [
            v.clone(),
            v.xor(c.row(0)),
            v.xor(c.row(1)),
            v.xor(c.row(0)).xor(c.row(1)),
        ] {
            if best.as_ref().map_or(true, |b| w < *b) {
                best = Some(w);
            }
        }
        assert_eq!(c.reduce(&v), best.unwrap());
    }

    impl LinearCode {
        fn row(&self, i: usize) -> &BitVector {
            &self.rows()[i]
        }
    }
}
