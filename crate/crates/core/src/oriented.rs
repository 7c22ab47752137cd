//! Freely oriented matroids: a ground set of element pairs `{e, ē}` with a family
//! of signed circuits, optionally realized by an integer matrix whose column for
//! `ē` is the negative of the column for `e`.
//!
//! Canonical form: positive symbols are `0..n`, negative symbols `n..2n`. A signed
//! subset of the doubled ground set is a pair of bitmasks over the `n` pairs.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::binary_matroid::{Combinations, GroundSubset};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, smith_with_left_transform, IntMatrix};

/// A subset of the doubled ground set: `pos` holds the symbols `e`, `neg` the symbols `ē`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct SignedSet {
    pub pos: GroundSubset,
    pub neg: GroundSubset,
}

/// A symbol of the doubled ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub element: usize,
    pub negated: bool,
}

impl Symbol {
    /// Index in the canonical numbering `0..2n`.
    pub fn index(self, n: usize) -> usize {
        if self.negated {
            n + self.element
        } else {
            self.element
        }
    }
}

impl SignedSet {
    pub fn new(pos: GroundSubset, neg: GroundSubset) -> Self {
        Self { pos, neg }
    }

    /// Signed set from a sign vector: positive entries go to `pos`, negative to `neg`.
    pub fn from_signs<T: Signed>(signs: &[T]) -> Self {
        let pos = GroundSubset::from_indices(signs.iter().enumerate().filter(|(_, x)| x.is_positive()).map(|(i, _)| i));
        let neg = GroundSubset::from_indices(signs.iter().enumerate().filter(|(_, x)| x.is_negative()).map(|(i, _)| i));
        Self { pos, neg }
    }

    /// The image `p(A)` in the underlying ground set.
    pub fn support(self) -> GroundSubset {
        self.pos.union(self.neg)
    }

    pub fn len(self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn is_empty(self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    /// `A ∩ Ā = ∅`, i.e. `A` maps injectively to the ground set.
    pub fn is_monomorphic(self) -> bool {
        self.pos.intersection(self.neg).is_empty()
    }

    #[must_use]
    pub fn negate(self) -> Self {
        Self { pos: self.neg, neg: self.pos }
    }

    pub fn contains(self, s: Symbol) -> bool {
        if s.negated {
            self.neg.contains(s.element)
        } else {
            self.pos.contains(s.element)
        }
    }

    #[must_use]
    pub fn without(self, s: Symbol) -> Self {
        if s.negated {
            Self { pos: self.pos, neg: self.neg.without(s.element) }
        } else {
            Self { pos: self.pos.without(s.element), neg: self.neg }
        }
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        Self { pos: self.pos.union(other.pos), neg: self.neg.union(other.neg) }
    }

    pub fn intersection(self, other: Self) -> Self {
        Self { pos: self.pos.intersection(other.pos), neg: self.neg.intersection(other.neg) }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.pos.is_subset(other.pos) && self.neg.is_subset(other.neg)
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        self.pos
            .iter()
            .map(|element| Symbol { element, negated: false })
            .chain(self.neg.iter().map(|element| Symbol { element, negated: true }))
    }

    /// Coefficient vector of the class `Σ_{x∈A} [x]` with `[ē] = -[e]`.
    pub fn coefficients(self, n: usize) -> Vec<i64> {
        (0..n).map(|e| self.pos.contains(e) as i64 - self.neg.contains(e) as i64).collect()
    }
}

/// `⟨A, B⟩ = |A ∩ B| - |A ∩ B̄|`.
pub fn scalar_product(a: SignedSet, b: SignedSet) -> i64 {
    a.intersection(b).len() as i64 - a.intersection(b.negate()).len() as i64
}

/// First integral homology `Z^free_rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralH1 {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreelyOrientedMatroid {
    n: usize,
    circuits: Vec<SignedSet>,
    representation: Option<IntMatrix>,
}

fn sort_signed(sets: &mut Vec<SignedSet>) {
    sets.sort_by_cached_key(|s| (s.support().len(), s.support().to_vec(), s.neg.to_vec()));
    sets.dedup();
}

impl FreelyOrientedMatroid {
    /// Matroid realized by the columns of `m`; signed circuits are the sign
    /// patterns of the minimal-support kernel vectors.
    pub fn from_signed_matrix(m: &IntMatrix) -> Self {
        let n = m.cols();
        assert!(n < 64, "at most 63 element pairs supported");
        let mut supports: Vec<GroundSubset> = Vec::new();
        let mut circuits = Vec::new();
        for k in 1..=n.min(m.rows() + 1) {
            let mut this_size = Vec::new();
            for s in Combinations::new(n, k) {
                if supports.iter().any(|c| c.is_subset(s)) {
                    continue;
                }
                let cols: Vec<usize> = s.iter().collect();
                let sub = m.select_columns(&cols);
                if let Some(kernel) = sub.kernel_line() {
                    let mut full = vec![BigInt::zero(); n];
                    for (x, &j) in kernel.into_iter().zip(&cols) {
                        full[j] = x;
                    }
                    let c = SignedSet::from_signs(&full);
                    circuits.push(c);
                    circuits.push(c.negate());
                    this_size.push(s);
                }
            }
            supports.extend(this_size);
        }
        sort_signed(&mut circuits);
        Self { n, circuits, representation: Some(m.clone()) }
    }

    /// Abstract matroid from a family of signed circuits (negations are not added).
    pub fn from_circuits(n: usize, circuits: Vec<SignedSet>) -> Self {
        assert!(n < 64);
        let mut circuits = circuits;
        sort_signed(&mut circuits);
        Self { n, circuits, representation: None }
    }

    /// Number of element pairs.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn signed_circuits(&self) -> &[SignedSet] {
        &self.circuits
    }

    pub fn representation(&self) -> Option<&IntMatrix> {
        self.representation.as_ref()
    }

    /// Circuit supports in the underlying matroid, without repetition.
    pub fn circuit_supports(&self) -> Vec<GroundSubset> {
        let set: BTreeSet<(usize, Vec<usize>)> =
            self.circuits.iter().map(|c| (c.support().len(), c.support().to_vec())).collect();
        set.into_iter().map(|(_, v)| GroundSubset::from_indices(v)).collect()
    }

    /// A subset of the underlying ground set is independent iff it contains no circuit support.
    pub fn is_independent(&self, s: GroundSubset) -> bool {
        !self.circuits.iter().any(|c| c.support().is_subset(s))
    }

    /// Rank of the underlying matroid: size of a greedily grown independent set.
    pub fn rank(&self) -> usize {
        let mut basis = GroundSubset::EMPTY;
        for e in 0..self.n {
            if self.is_independent(basis.with(e)) {
                basis = basis.with(e);
            }
        }
        basis.len()
    }

    pub fn bases(&self) -> Vec<GroundSubset> {
        let r = self.rank();
        Combinations::new(self.n, r).filter(|&b| self.is_independent(b)).collect()
    }

    /// Exhaustive check of the four signed-circuit axioms on the stored family.
    pub fn verify_signed_circuit_axioms(&self) -> bool {
        let family: BTreeSet<SignedSet> = self.circuits.iter().copied().collect();
        let full = GroundSubset::full(self.n);
        for &c in &self.circuits {
            if c.is_empty() || !c.is_monomorphic() || !c.support().is_subset(full) {
                return false;
            }
            if !family.contains(&c.negate()) {
                return false;
            }
        }
        for &c1 in &self.circuits {
            for &c2 in &self.circuits {
                if c1.support().is_subset(c2.support()) && c1 != c2 && c1 != c2.negate() {
                    return false;
                }
                if c1 == c2 {
                    continue;
                }
                for e in c1.intersection(c2).symbols() {
                    let allowed = c1.without(e).union(c2.without(e).negate());
                    if !self.circuits.iter().any(|c3| c3.is_subset(allowed)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Relation matrix: one row per circuit pair, one column per element pair.
    fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .circuits
            .iter()
            // one of each ± pair: the one whose smallest element is positive
            .filter(|c| c.support().min_element().is_some_and(|min| c.pos.contains(min)))
            .map(|c| c.coefficients(self.n))
            .collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, self.n)
        } else {
            IntMatrix::from_rows(&rows)
        }
    }

    /// `H_1 = <Ẽ> / (e + ē, Σ_{x∈C} x)`, via the Smith form of the circuit relations.
    pub fn h1_z(&self) -> IntegralH1 {
        let rel = self.relation_matrix();
        let snf = smith_normal_form(&rel);
        IntegralH1 { free_rank: self.n - snf.rank, torsion: snf.torsion_u64() }
    }

    /// Regular iff `H_1 ≅ Z^r`.
    pub fn is_regular_om(&self) -> bool {
        let h = self.h1_z();
        h.torsion.is_empty() && h.free_rank == self.rank()
    }

    /// The universal cocycle `e ↦ [e] ∈ H_1`, as an integer matrix with one column
    /// per element, in coordinates on the free part of `H_1`.
    pub fn universal_cocycle(&self) -> IntMatrix {
        let rel = self.relation_matrix().transpose();
        let t = smith_with_left_transform(&rel);
        let mut m = IntMatrix::zeros(t.free_rows.len(), self.n);
        for (k, &row) in t.free_rows.iter().enumerate() {
            for e in 0..self.n {
                let x: i64 = t.left[row][e].clone().try_into().expect("cocycle entry exceeds i64");
                m.set(k, e, x);
            }
        }
        m
    }

    /// Whether `m` (columns = positive symbols) is a representation in which every
    /// basis generates the lattice spanned by all columns.
    pub fn is_unipotent_representation(&self, m: &IntMatrix) -> Result<bool> {
        if m.cols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.cols() });
        }
        // circuits map to positive relations
        for c in &self.circuits {
            let cols: Vec<usize> = c.support().iter().collect();
            let Some(kernel) = m.select_columns(&cols).kernel_line() else {
                return Ok(false);
            };
            let agrees = |flip: bool| {
                cols.iter().zip(&kernel).all(|(&e, x)| {
                    let positive = x.is_positive() != flip;
                    c.pos.contains(e) == positive
                })
            };
            if !(agrees(false) || agrees(true)) {
                return Ok(false);
            }
        }
        let r = self.rank();
        if m.rank() != r {
            return Ok(false);
        }
        for b in self.bases() {
            let cols: Vec<usize> = b.iter().collect();
            if !generates_saturation(&m.select_columns(&cols)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Signed cocircuits: sign patterns of the functionals vanishing on a hyperplane
    /// spanned by `r - 1` independent columns.
    pub fn signed_cocircuits(&self) -> Result<Vec<SignedSet>> {
        let m = self.representation.as_ref().ok_or(Error::NoRepresentation)?;
        let r = m.rank();
        let n = self.n;
        let mut out = Vec::new();
        if r == 0 {
            return Ok(out);
        }
        // project onto r independent rows so functionals are square cofactors
        let rows = independent_rows(m);
        let m = m.select_rows(&rows);
        for s in Combinations::new(n, r - 1) {
            let cols: Vec<usize> = s.iter().collect();
            if m.select_columns(&cols).rank() != r - 1 {
                continue;
            }
            let functional: Vec<BigInt> = (0..r)
                .map(|i| {
                    let mut square = IntMatrix::zeros(r, r);
                    for (k, &c) in cols.iter().enumerate() {
                        for row in 0..r {
                            square.set(row, k, m.get(row, c));
                        }
                    }
                    square.set(i, r - 1, 1);
                    square.determinant()
                })
                .collect();
            let values: Vec<BigInt> = (0..n)
                .map(|e| (0..r).map(|i| &functional[i] * BigInt::from(m.get(i, e))).sum())
                .collect();
            let c = SignedSet::from_signs(&values);
            out.push(c);
            out.push(c.negate());
        }
        sort_signed(&mut out);
        Ok(out)
    }

    /// Standard-form dual `[-D^t | I]` of the representation `[I | D]` (over the rationals,
    /// rows rescaled to primitive integer vectors).
    pub fn dual(&self) -> Result<FreelyOrientedMatroid> {
        let m = self.representation.as_ref().ok_or(Error::NoRepresentation)?;
        let rows = independent_rows(m);
        let m = m.select_rows(&rows);
        let n = self.n;
        let r = m.rows();
        // choose basis columns greedily and express every column in that basis
        let mut basis_cols = Vec::new();
        for j in 0..n {
            let mut cand = basis_cols.clone();
            cand.push(j);
            if m.select_columns(&cand).rank() == cand.len() {
                basis_cols = cand;
            }
            if basis_cols.len() == r {
                break;
            }
        }
        let b = m.select_columns(&basis_cols);
        let det = b.determinant();
        let free: Vec<usize> = (0..n).filter(|j| !basis_cols.contains(j)).collect();
        let mut dual_rows: Vec<Vec<i64>> = Vec::new();
        for &q in &free {
            // coordinates of column q in the basis by Cramer's rule: x_i = det_i / det
            let mut row = vec![BigInt::zero(); n];
            for (i, &p) in basis_cols.iter().enumerate() {
                let mut bi = b.clone();
                for k in 0..r {
                    bi.set(k, i, m.get(k, q));
                }
                row[p] = -bi.determinant();
            }
            row[q] = det.clone();
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            let row: Vec<i64> = row.iter().map(|x| (x / &g).try_into().expect("dual entry exceeds i64")).collect();
            dual_rows.push(row);
        }
        let dual = if dual_rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&dual_rows) };
        Ok(FreelyOrientedMatroid::from_signed_matrix(&dual))
    }
}

/// Greedy choice of a maximal set of linearly independent rows.
fn independent_rows(m: &IntMatrix) -> Vec<usize> {
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        let mut cand = rows.clone();
        cand.push(i);
        if m.select_rows(&cand).rank() == cand.len() {
            rows = cand;
        }
    }
    rows
}

/// Whether the columns of `basis` are independent and generate all integer points
/// of their rational span: the maximal minors have gcd one.
fn generates_saturation(basis: &IntMatrix) -> bool {
    let r = basis.cols();
    let mut g = BigInt::zero();
    for rows in Combinations::new(basis.rows(), r) {
        let rows: Vec<usize> = rows.iter().collect();
        g = g.gcd(&basis.select_rows(&rows).determinant());
        if g.is_one() {
            return true;
        }
    }
    g.is_one()
}

/// Positive roots `e_i - e_j`, `i < j`, of type `A_n` in `Z^{n+1}`.
pub fn root_system_a(n: usize) -> IntMatrix {
    let mut cols = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let mut v = vec![0i64; n + 1];
            v[i] = 1;
            v[j] = -1;
            cols.push(v);
        }
    }
    IntMatrix::from_columns(n + 1, &cols)
}

/// Positive roots of `B_2` in the basis of simple roots: `α, β, α+β, α+2β`.
pub fn root_system_b2() -> IntMatrix {
    IntMatrix::from_columns(2, &[[1, 0], [0, 1], [1, 1], [1, 2]])
}
