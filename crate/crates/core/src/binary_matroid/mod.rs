//! Binary matroids given by a column representation over GF(2).
//!
//! Columns are stored as words in reduced coordinates: after construction the
//! ambient space is exactly the column span, so `ambient rank == rank`.

mod regular;
mod subset;

use std::sync::OnceLock;

pub use regular::{check_witness, is_totally_unimodular, FanoKind, FanoMinor, TuSigning};
pub use subset::{Combinations, GroundSubset};
pub(crate) use subset::sort_canonically;

use crate::error::{Error, Result};
use crate::linalg::{rank_of_words, F2Matrix, WordBasis};

/// Largest ground set supported by the bitmask representation.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug)]
pub struct BinaryMatroid {
    rank: usize,
    columns: Vec<u64>,
    circuits: OnceLock<Vec<GroundSubset>>,
    cocircuits: OnceLock<Vec<GroundSubset>>,
}

impl Clone for BinaryMatroid {
    fn clone(&self) -> Self {
        Self {
            rank: self.rank,
            columns: self.columns.clone(),
            circuits: self.circuits.clone(),
            cocircuits: self.cocircuits.clone(),
        }
    }
}

impl PartialEq for BinaryMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.columns == other.columns
    }
}

impl Eq for BinaryMatroid {}

/// Mod-2 first homology together with the universal cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1F2 {
    pub dimension: usize,
    /// Image of each ground element, packed with coordinate `i` at bit `i`.
    pub cocycle: Vec<u64>,
}

impl BinaryMatroid {
    /// Matroid on the columns of `m`.
    pub fn from_matrix(m: &F2Matrix) -> Self {
        assert!(m.cols() <= MAX_ELEMENTS, "at most {MAX_ELEMENTS} ground elements supported");
        let (reduced, pivots) = m.rref();
        let rank = pivots.len();
        let columns = (0..m.cols())
            .map(|j| (0..rank).fold(0u64, |acc, i| acc | (reduced.get(i, j) as u64) << i))
            .collect();
        Self::from_reduced(rank, columns)
    }

    /// Matroid on vectors of `F_2^rows` packed as words (bit `i` = coordinate `i`).
    pub fn from_vectors(rows: usize, columns: &[u64]) -> Self {
        Self::from_matrix(&F2Matrix::from_column_words(rows, columns))
    }

    fn from_reduced(rank: usize, columns: Vec<u64>) -> Self {
        Self { rank, columns, circuits: OnceLock::new(), cocircuits: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Columns in reduced coordinates.
    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset::full(self.len())
    }

    pub fn to_matrix(&self) -> F2Matrix {
        F2Matrix::from_column_words(self.rank, &self.columns)
    }

    fn check_subset(&self, s: GroundSubset) {
        assert!(s.is_subset(self.ground()), "subset {s:?} exceeds ground set of size {}", self.len());
    }

    pub fn rank_of(&self, s: GroundSubset) -> usize {
        self.check_subset(s);
        rank_of_words(s.iter().map(|e| self.columns[e]))
    }

    pub fn is_independent(&self, s: GroundSubset) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_basis(&self, s: GroundSubset) -> bool {
        s.len() == self.rank && self.is_independent(s)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.columns[e] == 0
    }

    /// All bases, in increasing mask order.
    pub fn bases(&self) -> Vec<GroundSubset> {
        Combinations::new(self.len(), self.rank).filter(|&b| self.is_independent(b)).collect()
    }

    /// Elements whose column lies in the span of `s`.
    pub fn closure(&self, s: GroundSubset) -> GroundSubset {
        self.check_subset(s);
        let span = WordBasis::from_vectors(s.iter().map(|e| self.columns[e]));
        GroundSubset::from_indices((0..self.len()).filter(|&e| span.contains(self.columns[e])))
    }

    pub fn is_flat(&self, s: GroundSubset) -> bool {
        self.closure(s) == s
    }

    /// Inclusion-minimal dependent sets, sorted by size and then lexicographically.
    pub fn circuits(&self) -> &[GroundSubset] {
        self.circuits.get_or_init(|| {
            let mut found: Vec<GroundSubset> = Vec::new();
            for k in 1..=(self.rank + 1).min(self.len()) {
                let mut this_size = Vec::new();
                for s in Combinations::new(self.len(), k) {
                    if found.iter().any(|c| c.is_subset(s)) {
                        continue;
                    }
                    if self.rank_of(s) < k {
                        this_size.push(s);
                    }
                }
                found.extend(this_size);
            }
            subset::sort_canonically(&mut found);
            found
        })
    }

    /// Minimal nonempty supports of the row space, sorted canonically.
    pub fn cocircuits(&self) -> &[GroundSubset] {
        self.cocircuits.get_or_init(|| {
            assert!(self.rank <= 24, "row space enumeration limited to rank 24");
            let mut supports: Vec<GroundSubset> = (1u64..1 << self.rank)
                .map(|f| {
                    GroundSubset::from_indices(
                        (0..self.len()).filter(|&e| (f & self.columns[e]).count_ones() % 2 == 1),
                    )
                })
                .collect();
            supports.sort_by_key(|s| s.len());
            let mut minimal: Vec<GroundSubset> = Vec::new();
            for s in supports {
                if !minimal.iter().any(|m| m.is_subset(s)) {
                    minimal.push(s);
                }
            }
            subset::sort_canonically(&mut minimal);
            minimal
        })
    }

    /// The unique circuit in `basis + e`, for `e` outside the basis.
    pub fn fundamental_circuit(&self, basis: GroundSubset, e: usize) -> GroundSubset {
        assert!(self.is_basis(basis) && !basis.contains(e));
        let with_e = basis.with(e);
        let circuits: Vec<GroundSubset> =
            self.circuits().iter().copied().filter(|c| c.is_subset(with_e)).collect();
        assert_eq!(circuits.len(), 1, "basic circuit must be unique");
        circuits[0]
    }

    /// Standard-form dual: for `[I | D]` this is `[D^t | I]` in the original column order.
    pub fn dual(&self) -> BinaryMatroid {
        let m = self.to_matrix();
        let (reduced, pivots) = m.rref();
        let n = self.len();
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut d = F2Matrix::zeros(free.len(), n);
        for (k, &q) in free.iter().enumerate() {
            d.set(k, q, true);
            for (i, &p) in pivots.iter().enumerate() {
                if reduced.get(i, q) {
                    d.set(k, p, true);
                }
            }
        }
        BinaryMatroid::from_matrix(&d)
    }

    /// Elements surviving a minor, in increasing order.
    pub fn minor_elements(&self, delete: GroundSubset, contract: GroundSubset) -> Vec<usize> {
        self.ground().difference(delete.union(contract)).iter().collect()
    }

    /// `M \ delete / contract`, realized by projecting away the span of the contracted columns.
    pub fn minor(&self, delete: GroundSubset, contract: GroundSubset) -> Result<BinaryMatroid> {
        self.check_subset(delete);
        self.check_subset(contract);
        if !delete.intersection(contract).is_empty() {
            return Err(Error::OverlappingSets);
        }
        let span = WordBasis::from_vectors(contract.iter().map(|e| self.columns[e]));
        let cols: Vec<u64> = self
            .minor_elements(delete, contract)
            .into_iter()
            .map(|e| span.reduce(self.columns[e]))
            .collect();
        Ok(BinaryMatroid::from_vectors(self.rank, &cols))
    }

    /// Restriction to `keep`, i.e. deletion of the complement.
    pub fn restrict(&self, keep: GroundSubset) -> BinaryMatroid {
        self.minor(self.ground().difference(keep), GroundSubset::EMPTY).expect("disjoint by construction")
    }

    /// Mod-2 first homology `F_2^E / <circuits>` and the universal cocycle, computed
    /// from the circuit family alone.
    pub fn h1_f2(&self) -> H1F2 {
        let n = self.len();
        let circuits = self.circuits();
        let mut rel = F2Matrix::zeros(circuits.len(), n);
        for (i, c) in circuits.iter().enumerate() {
            for e in c.iter() {
                rel.set(i, e, true);
            }
        }
        let (reduced, pivots) = rel.rref();
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        assert!(free.len() <= 64);
        let position = |j: usize| free.iter().position(|&f| f == j);
        let mut cocycle = vec![0u64; n];
        for (e, image) in cocycle.iter_mut().enumerate() {
            if let Some(p) = position(e) {
                *image = 1 << p;
            } else {
                let row = pivots.iter().position(|&p| p == e).unwrap();
                for (k, &f) in free.iter().enumerate() {
                    if reduced.get(row, f) {
                        *image |= 1 << k;
                    }
                }
            }
        }
        H1F2 { dimension: free.len(), cocycle }
    }

    pub fn fano_kind(&self) -> FanoKind {
        regular::fano_kind(self)
    }

    /// A deletion/contraction pair exhibiting an `F7` or `F7*` minor, if any.
    pub fn find_fano_minor(&self) -> Option<FanoMinor> {
        regular::find_fano_minor(self)
    }

    /// Tutte's criterion: no minor isomorphic to `F7` or `F7*`.
    pub fn is_regular(&self) -> bool {
        self.find_fano_minor().is_none()
    }

    /// A totally unimodular signing of the standard form, if one exists.
    pub fn tu_signing(&self) -> Option<TuSigning> {
        regular::tu_signing(self)
    }

    /// Regularity via signing the standard form to a totally unimodular matrix.
    pub fn is_regular_tu(&self) -> bool {
        self.tu_signing().is_some()
    }
}

/// The Fano matrix `[I_3 | C]`.
pub fn fano_matrix() -> F2Matrix {
    F2Matrix::from_rows(&[
        [1, 0, 0, 1, 1, 0, 1],
        [0, 1, 0, 1, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 1],
    ])
}

/// The dual Fano matrix `[-C^t | I_4]`.
pub fn fano_dual_matrix() -> F2Matrix {
    F2Matrix::from_rows(&[
        [1, 1, 0, 1, 0, 0, 0],
        [1, 0, 1, 0, 1, 0, 0],
        [0, 1, 1, 0, 0, 1, 0],
        [1, 1, 1, 0, 0, 0, 1],
    ])
}

/// `n` parallel copies of the nonzero vector of `F_2`.
pub fn uniform_rank_one(n: usize) -> BinaryMatroid {
    BinaryMatroid::from_vectors(1, &vec![1; n])
}
