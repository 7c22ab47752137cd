//! Dense bit matrices over GF(2).
//!
//! Rows are packed into 64-bit words. Elimination always picks pivots left to right
//! and top to bottom, so echelon forms and kernel bases are deterministic.

use std::fmt;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of bounds for F2Vector of length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of bounds for F2Vector of length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// A dense `rows x cols` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. All rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        m
    }

    /// Builds a matrix whose column `j` has bit `i` of `columns[j]` in row `i`.
    pub fn from_column_words(rows: usize, columns: &[u64]) -> Self {
        assert!(rows <= 64);
        let mut m = Self::zeros(rows, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c >> i & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        let w = &mut self.bits[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector {
            len: self.cols,
            words: self.bits[i * self.stride..(i + 1) * self.stride].to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            v.set(i, self.get(i, j));
        }
        v
    }

    /// Column `j` packed into a word, row `i` at bit `i`. Requires `rows <= 64`.
    pub fn column_word(&self, j: usize) -> u64 {
        assert!(self.rows <= 64);
        (0..self.rows).fold(0, |acc, i| acc | (self.get(i, j) as u64) << i)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> F2Matrix {
        let mut m = F2Matrix::zeros(self.rows, columns.len());
        for (k, &j) in columns.iter().enumerate() {
            for i in 0..self.rows {
                if self.get(i, j) {
                    m.set(i, k, true);
                }
            }
        }
        m
    }

    pub fn mul_vector(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols);
        let mut out = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            out.set(i, self.row(i).dot(v));
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.bits.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.stride {
            let s = self.bits[src * self.stride + w];
            self.bits[dst * self.stride + w] ^= s;
        }
    }

    /// Reduced row echelon form together with the pivot column of each nonzero row.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for j in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&i| m.get(i, j)) else {
                continue;
            };
            m.swap_rows(p, next);
            for i in 0..m.rows {
                if i != next && m.get(i, j) {
                    m.xor_row_into(next, i);
                }
            }
            pivots.push(j);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<F2Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = F2Vector::zeros(self.cols);
                v.set(free, true);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
                if j + 1 < self.cols {
                    f.write_str(" ")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dimension of the column space of `m` over GF(2).
pub fn rank_f2(m: &F2Matrix) -> usize {
    m.rank()
}

/// Basis of the kernel of `m`.
pub fn nullspace_f2(m: &F2Matrix) -> Vec<F2Vector> {
    m.nullspace()
}

/// Rank of a family of vectors packed one per word.
pub fn rank_of_words(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = WordBasis::default();
    vectors.into_iter().filter(|&v| basis.insert(v)).count()
}

/// Incremental echelon basis of vectors in `F_2^64`, packed as words.
///
/// Each stored vector has a distinct leading bit, and no stored vector has
/// another's leading bit set, so [`WordBasis::reduce`] returns a canonical
/// representative of the coset `v + span`.
#[derive(Clone, Debug, Default)]
pub struct WordBasis {
    vectors: Vec<u64>,
}

impl WordBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors(vectors: impl IntoIterator<Item = u64>) -> Self {
        let mut b = Self::default();
        for v in vectors {
            b.insert(v);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &b in &self.vectors {
            let lead = 63 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` to the span. Returns false if it was already in it.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let lead = 63 - v.leading_zeros();
        for b in &mut self.vectors {
            if *b >> lead & 1 == 1 {
                *b ^= v;
            }
        }
        self.vectors.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fano() -> F2Matrix {
        F2Matrix::from_rows(&[
            [1, 0, 0, 1, 1, 0, 1],
            [0, 1, 0, 1, 0, 1, 1],
            [0, 0, 1, 0, 1, 1, 1],
        ])
    }

    fn fano_dual() -> F2Matrix {
        F2Matrix::from_rows(&[
            [1, 1, 0, 1, 0, 0, 0],
            [1, 0, 1, 0, 1, 0, 0],
            [0, 1, 1, 0, 0, 1, 0],
            [1, 1, 1, 0, 0, 0, 1],
        ])
    }

    #[test]
    fn ranks_of_reference_matrices() {
        assert_eq!(rank_f2(&fano()), 3);
        assert_eq!(rank_f2(&F2Matrix::zeros(4, 5)), 0);
        assert_eq!(rank_f2(&fano_dual()), 4);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_f2(&F2Matrix::identity(3)).is_empty());

        let m = fano();
        let kernel = nullspace_f2(&m);
        assert_eq!(kernel.len(), 4);
        for v in &kernel {
            assert!(m.mul_vector(v).is_zero());
        }
        // independence of the basis
        let rows: Vec<Vec<u8>> =
            kernel.iter().map(|v| (0..7).map(|i| v.get(i) as u8).collect()).collect();
        assert_eq!(F2Matrix::from_rows(&rows).rank(), 4);

        let doubled = F2Matrix::from_rows(&[[1, 1], [0, 0]]);
        assert_eq!(nullspace_f2(&doubled), vec![F2Vector::from_bits(&[true, true])]);
    }

    #[test]
    fn fano_dual_rows_annihilate_fano_rows() {
        let f = fano();
        let d = fano_dual();
        for i in 0..3 {
            for k in 0..4 {
                assert!(!f.row(i).dot(&d.row(k)));
            }
        }
    }

    #[test]
    fn word_basis_reduces_canonically() {
        let b = WordBasis::from_vectors([0b011, 0b110]);
        assert_eq!(b.dim(), 2);
        assert!(b.contains(0b101));
        assert_eq!(b.reduce(0b001), b.reduce(0b111));
        assert_eq!(rank_of_words([1, 2, 3, 4]), 3);
    }

    #[test]
    #[should_panic]
    fn out_of_bounds_access_panics() {
        F2Matrix::zeros(2, 2).get(2, 0);
    }
}
