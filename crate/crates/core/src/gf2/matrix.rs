use std::fmt;

use super::BitVector;
use crate::error::{Error, Result};

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Output of [`BitMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    /// Reduced row echelon form; zero rows are kept at the bottom.
    pub reduced: BitMatrix,
    pub rank: usize,
    /// Zero-based pivot column of each of the first `rank` rows, ascending.
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = BitVector::zeros(n);
                r.set(i, true);
                r
            })
            .collect();
        BitMatrix { cols: n, rows }
    }

    /// An empty matrix with a fixed column count.
    pub fn empty(cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Parses rows of `0`/`1` characters. Panics on malformed input; meant
    /// for literals in tests and examples.
    pub fn from_bit_strings(rows: &[&str]) -> Self {
        let rows: Vec<BitVector> = rows
            .iter()
            .map(|s| BitVector::parse_bits(s).expect("bit string"))
            .collect();
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows).expect("rows of equal length")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "row length must match column count");
        self.rows.push(row);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.support() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `M · vᵀ`: bit `i` of the result is the inner product of row `i` with `v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(other.cols);
                for j in r.support() {
                    acc.xor_assign(&other.rows[j]);
                }
                acc
            })
            .collect();
        BitMatrix {
            cols: other.cols,
            rows,
        }
    }

    /// Reduced row echelon form. Pivots are taken in increasing column order,
    /// so the result is unique for a given row space.
    pub fn rref(&self) -> RowEchelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        RowEchelon {
            reduced: BitMatrix {
                cols: self.cols,
                rows,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : M·xᵀ = 0}`, one row per free column.
    pub fn nullspace(&self) -> BitMatrix {
        let ech = self.rref();
        nullspace_from(&ech, self.cols)
    }

    /// Solves `M·xᵀ = bᵀ`. Returns a particular solution together with a
    /// basis of the homogeneous solutions, or `None` when the system is
    /// inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<(BitVector, BitMatrix)>> {
        if b.len() != self.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} but the matrix has {} rows",
                b.len(),
                self.rows.len()
            )));
        }
        // Eliminate on the augmented rows [M | b].
        let mut rows: Vec<(BitVector, bool)> = self
            .rows
            .iter()
            .cloned()
            .zip((0..b.len()).map(|i| b.get(i)))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].0.get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let (pv, pb) = rows[rank].clone();
            for (r, (row, rhs)) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pv);
                    *rhs ^= pb;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|(_, rhs)| *rhs) {
            return Ok(None);
        }
        let mut particular = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if rows[i].1 {
                particular.set(p, true);
            }
        }
        let ech = RowEchelon {
            reduced: BitMatrix {
                cols: self.cols,
                rows: rows.into_iter().map(|(r, _)| r).collect(),
            },
            rank,
            pivots,
        };
        Ok(Some((particular, nullspace_from(&ech, self.cols))))
    }

    /// True when `v` is in the row space.
    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        let ech = self.rref();
        ech.reduce(v).is_zero()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    /// Applies a column permutation: column `i` moves to `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.permuted(perm)).collect(),
        }
    }
}

impl RowEchelon {
    /// Reduces `v` against the pivot rows; the result is zero iff `v` is in
    /// the row space, and is the lexicographically smallest member of
    /// `v + rowspace` otherwise.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out.get(p) {
                out.xor_assign(self.reduced.row(i));
            }
        }
        out
    }

    /// The nonzero rows as a full-rank matrix.
    pub fn basis(&self) -> BitMatrix {
        BitMatrix {
            cols: self.reduced.cols,
            rows: self.reduced.rows[..self.rank].to_vec(),
        }
    }
}

fn nullspace_from(ech: &RowEchelon, cols: usize) -> BitMatrix {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(cols - ech.rank);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = BitVector::zeros(cols);
        x.set(free, true);
        for (i, &p) in ech.pivots.iter().enumerate() {
            if ech.reduced.row(i).get(free) {
                x.set(p, true);
            }
        }
        basis.push(x);
    }
    BitMatrix { cols, rows: basis }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent elimination used as a rank oracle: works on `u128` column
    /// masks and never touches `BitMatrix::rref`.
    fn oracle_rank(m: &BitMatrix) -> usize {
        assert!(m.cols() <= 128);
        let mut rows: Vec<u128> = m
            .row_vectors()
            .iter()
            .map(|r| r.support().iter().fold(0u128, |acc, &i| acc | 1 << i))
            .collect();
        let mut rank = 0;
        while let Some(pos) = rows.iter().position(|&r| r != 0) {
            let pivot = rows.swap_remove(pos);
            let low = pivot & pivot.wrapping_neg();
            for r in rows.iter_mut() {
                if *r & low != 0 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let rows = (0..rows)
            .map(|_| {
                let bits: Vec<bool> = (0..cols).map(|_| rng.gen()).collect();
                BitVector::from_bools(&bits)
            })
            .collect();
        BitMatrix::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn rref_of_identity() {
        let ech = BitMatrix::identity(3).rref();
        assert_eq!(ech.reduced, BitMatrix::identity(3));
        assert_eq!(ech.rank, 3);
        assert_eq!(ech.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_detects_xor_dependency() {
        let m = BitMatrix::from_bit_strings(&["110", "011", "101"]);
        let ech = m.rref();
        assert_eq!(ech.rank, 2);
        assert!(ech.reduced.row(2).is_zero());
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let ech = BitMatrix::zeros(3, 5).rref();
        assert_eq!(ech.rank, 0);
        assert!(ech.pivots.is_empty());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(BitMatrix::identity(5).nullspace().rows(), 0);
        let ns = BitMatrix::from_bit_strings(&["1111"]).nullspace();
        assert_eq!(ns.rows(), 3);
        for r in ns.row_vectors() {
            assert_eq!(r.weight() % 2, 0);
        }
    }

    #[test]
    fn nullspace_of_extended_hamming_is_itself() {
        let g = BitMatrix::from_bit_strings(&[
            "11110000", "00111100", "00001111", "10101010",
        ]);
        let ns = g.nullspace();
        assert_eq!(ns.rows(), 4);
        // self-duality: pairwise inner products vanish and the spans agree
        for a in g.row_vectors() {
            for b in g.row_vectors() {
                assert!(!a.dot(b));
            }
        }
        for r in ns.row_vectors() {
            assert!(g.row_space_contains(r));
        }
    }

    #[test]
    fn solve_examples() {
        let (x, k) = BitMatrix::identity(2)
            .solve(&BitVector::parse_bits("11").unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(x.to_bit_string(), "11");
        assert_eq!(k.rows(), 0);

        let m = BitMatrix::from_bit_strings(&["11"]);
        let (x, k) = m.solve(&BitVector::parse_bits("1").unwrap()).unwrap().unwrap();
        assert_eq!(x.weight(), 1);
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0).to_bit_string(), "11");

        let inconsistent = BitMatrix::from_bit_strings(&["11", "11"]);
        assert!(inconsistent
            .solve(&BitVector::parse_bits("10").unwrap())
            .unwrap()
            .is_none());
        assert!(m.solve(&BitVector::parse_bits("10").unwrap()).is_err());
    }

    #[test]
    fn rank_matches_oracle_on_random_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 32, 64);
            assert_eq!(m.rank(), oracle_rank(&m));
        }
    }

    proptest! {
        #[test]
        fn rank_nullity((rows, cols, seed) in (1usize..20, 1usize..40, any::<u64>())) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&mut rng, rows, cols);
            let ech = m.rref();
            prop_assert_eq!(ech.rank, oracle_rank(&m));
            let ns = m.nullspace();
            prop_assert_eq!(ech.rank + ns.rows(), cols);
            for z in ns.row_vectors() {
                prop_assert!(m.mul_vec(z).is_zero());
            }
            // row space preserved in both directions
            for r in m.row_vectors() {
                prop_assert!(ech.reduce(r).is_zero());
            }
            for r in ech.basis().row_vectors() {
                prop_assert!(m.row_space_contains(r));
            }
        }

        #[test]
        fn solve_particular_is_exact((rows, cols, seed) in (1usize..20, 1usize..40, any::<u64>())) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&mut rng, rows, cols);
            let x0: Vec<bool> = (0..cols).map(|_| rng.gen()).collect();
            let b = m.mul_vec(&BitVector::from_bools(&x0));
            let (x, kernel) = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x), b);
            prop_assert_eq!(kernel.rows(), cols - m.rank());
        }
    }
}
