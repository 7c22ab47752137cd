//! Integer matrices: exact determinants, ranks, kernels and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Dense integer matrix with `i64` entries.
///
/// Arithmetic that can grow (determinants, elimination, Smith normal form) is
/// carried out in arbitrary precision, so callers never see overflow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged row {i}");
            entries.extend_from_slice(r.as_ref());
        }
        Self { rows: rows.len(), cols, entries }
    }

    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.as_ref().len(), rows, "column {j} has wrong length");
            for (i, &x) in c.as_ref().iter().enumerate() {
                m.set(i, j, x);
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn select_columns(&self, columns: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, columns.len());
        for (k, &j) in columns.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, k, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m.set(k, j, self.get(i, j));
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    fn big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.big_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        echelon(self.big_rows(), self.cols).1.len()
    }

    /// Primitive integer vector spanning the kernel when the kernel is one-dimensional.
    ///
    /// The first nonzero coordinate of the result is positive.
    pub fn kernel_line(&self) -> Option<Vec<BigInt>> {
        let basis = self.kernel_basis();
        if basis.len() != 1 {
            return None;
        }
        basis.into_iter().next()
    }

    /// Integer basis of the rational kernel, one primitive vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let (rows, pivots) = echelon(self.big_rows(), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                // rows are fully reduced: row k reads a_k x_{p_k} + sum_free c_kf x_f = 0
                let mut denom = BigInt::one();
                for (k, &p) in pivots.iter().enumerate() {
                    if !rows[k][free].is_zero() {
                        denom = denom.lcm(&rows[k][p]);
                    }
                }
                let mut v = vec![BigInt::zero(); self.cols];
                v[free] = denom.clone();
                for (k, &p) in pivots.iter().enumerate() {
                    if !rows[k][free].is_zero() {
                        v[p] = -(&rows[k][free] * &denom) / &rows[k][p];
                    }
                }
                normalize_primitive(&mut v);
                v
            })
            .collect()
    }
}

fn normalize_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
}

/// Fraction-free reduced echelon form: each pivot column is zero outside its pivot row.
fn echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let n = a.len();
    let mut pivots = Vec::new();
    let mut next = 0;
    for j in 0..cols {
        if next == n {
            break;
        }
        let Some(p) = (next..n).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(p, next);
        for i in 0..n {
            if i == next || a[i][j].is_zero() {
                continue;
            }
            let g = a[next][j].gcd(&a[i][j]);
            let fp = &a[i][j] / &g;
            let fi = &a[next][j] / &g;
            for c in 0..cols {
                let v = &a[i][c] * &fi - &a[next][c] * &fp;
                a[i][c] = v;
            }
            let rg = a[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !rg.is_zero() && !rg.is_one() {
                for x in a[i].iter_mut() {
                    *x = &*x / &rg;
                }
            }
        }
        pivots.push(j);
        next += 1;
    }
    (a, pivots)
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, with `d[i] | d[i+1]`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion().iter().map(|d| d.to_u64().expect("torsion coefficient exceeds u64")).collect()
    }
}

/// Smith normal form together with a unimodular left transform `P`, so that
/// `P * A * Q` is diagonal for some unimodular `Q`.
///
/// `free_rows` lists the rows of `P` whose entries give coordinates on the
/// free part of the cokernel `Z^rows / im(A)`.
#[derive(Clone, Debug)]
pub struct SmithWithTransform {
    pub form: SmithForm,
    pub left: Vec<Vec<BigInt>>,
    pub free_rows: Vec<usize>,
}

trait SnfScalar: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {
    fn into_big(self) -> BigInt;
}

impl SnfScalar for i64 {
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl SnfScalar for BigInt {
    fn into_big(self) -> BigInt {
        self
    }
}

struct Reduction<T> {
    pivots: Vec<T>,
    pivot_rows: Vec<usize>,
    left: Option<Vec<Vec<T>>>,
}

/// Diagonalizes by pivoting on a minimal-magnitude entry of the active part.
/// Returns `None` if an intermediate value overflows `T`.
fn reduce<T: SnfScalar>(mut a: Vec<Vec<T>>, cols: usize, track: bool) -> Option<Reduction<T>> {
    let rows = a.len();
    let mut left = track.then(|| {
        (0..rows)
            .map(|i| (0..rows).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect::<Vec<Vec<T>>>()
    });
    let mut row_active = vec![true; rows];
    let mut col_active = vec![true; cols];
    let mut pivots = Vec::new();
    let mut pivot_rows = Vec::new();

    loop {
        let mut best: Option<(usize, usize)> = None;
        'search: for i in (0..rows).filter(|&i| row_active[i]) {
            for j in (0..cols).filter(|&j| col_active[j]) {
                let x = &a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs());
                if better {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };

        let mut clean = true;
        // clear the pivot column with row operations
        for i in 0..rows {
            if i == pi || !row_active[i] || a[i][pj].is_zero() {
                continue;
            }
            let q = a[i][pj].div_floor(&a[pi][pj]);
            for j in 0..cols {
                if !col_active[j] || a[pi][j].is_zero() {
                    continue;
                }
                let v = a[i][j].checked_sub(&q.checked_mul(&a[pi][j])?)?;
                a[i][j] = v;
            }
            if let Some(l) = left.as_mut() {
                for j in 0..rows {
                    if l[pi][j].is_zero() {
                        continue;
                    }
                    let v = l[i][j].checked_sub(&q.checked_mul(&l[pi][j])?)?;
                    l[i][j] = v;
                }
            }
            if !a[i][pj].is_zero() {
                clean = false;
            }
        }
        // clear the pivot row with column operations
        for j in 0..cols {
            if j == pj || !col_active[j] || a[pi][j].is_zero() {
                continue;
            }
            let q = a[pi][j].div_floor(&a[pi][pj]);
            for i in 0..rows {
                if !row_active[i] || a[i][pj].is_zero() {
                    continue;
                }
                let v = a[i][j].checked_sub(&q.checked_mul(&a[i][pj])?)?;
                a[i][j] = v;
            }
            if !a[pi][j].is_zero() {
                clean = false;
            }
        }
        if clean {
            pivots.push(a[pi][pj].abs());
            pivot_rows.push(pi);
            row_active[pi] = false;
            col_active[pj] = false;
        }
    }
    Some(Reduction { pivots, pivot_rows, left })
}

/// Turns a diagonal multiset into invariant factors via `diag(a,b) ~ diag(gcd, lcm)`.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

fn to_rows_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn to_rows_big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.big_rows()
}

/// Smith normal form of `m`. Machine integers are tried first; on overflow the
/// computation is repeated in arbitrary precision.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let pivots: Vec<BigInt> = match reduce(to_rows_i64(m), m.cols(), false) {
        Some(r) => r.pivots.into_iter().map(SnfScalar::into_big).collect(),
        None => reduce(to_rows_big(m), m.cols(), false).expect("bigint reduction cannot overflow").pivots,
    };
    let rank = pivots.len();
    SmithForm { diagonal: invariant_factors(pivots), rank }
}

/// As [`smith_normal_form`], also returning the left transform.
pub fn smith_with_left_transform(m: &IntMatrix) -> SmithWithTransform {
    let (pivots, pivot_rows, left) = match reduce(to_rows_i64(m), m.cols(), true) {
        Some(r) => (
            r.pivots.into_iter().map(SnfScalar::into_big).collect::<Vec<_>>(),
            r.pivot_rows,
            r.left
                .unwrap()
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect::<Vec<Vec<BigInt>>>(),
        ),
        None => {
            let r = reduce(to_rows_big(m), m.cols(), true).expect("bigint reduction cannot overflow");
            (r.pivots, r.pivot_rows, r.left.unwrap())
        }
    };
    let mut is_pivot = vec![false; m.rows()];
    for &p in &pivot_rows {
        is_pivot[p] = true;
    }
    let free_rows = (0..m.rows()).filter(|&i| !is_pivot[i]).collect();
    let rank = pivots.len();
    SmithWithTransform { form: SmithForm { diagonal: invariant_factors(pivots), rank }, left, free_rows }
}

/// True iff the `r` given vectors in `Z^r` form a basis of the lattice, i.e. `det = ±1`.
pub fn is_unimodular_basis(vectors: &[Vec<i64>]) -> bool {
    let r = vectors.len();
    if vectors.iter().any(|v| v.len() != r) {
        return false;
    }
    let m = IntMatrix::from_columns(r, vectors);
    m.determinant().abs().is_one()
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r)
        })
    }

    proptest! {
        #[test]
        fn snf_divisibility_and_rank(rows in small_matrix()) {
            let m = IntMatrix::from_rows(&rows);
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.rank, m.rank());
            for w in s.diagonal.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(s.diagonal.iter().all(|d| d.is_positive()));
        }

        #[test]
        fn snf_invariant_under_permutation_and_sign(rows in small_matrix(), flip in 0usize..4) {
            let m = IntMatrix::from_rows(&rows);
            let mut changed: Vec<Vec<i64>> = rows.iter().rev().cloned().collect();
            for row in changed.iter_mut() {
                row.rotate_left(1);
            }
            if flip < changed.len() {
                for x in changed[flip].iter_mut() {
                    *x = -*x;
                }
            }
            let n = IntMatrix::from_rows(&changed);
            prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&n));
        }

        #[test]
        fn snf_product_matches_cofactor_determinant(
            n in 1usize..5,
            seed in proptest::collection::vec(-5i64..6, 16),
        ) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
            let det = cofactor_det(&rows);
            let m = IntMatrix::from_rows(&rows);
            prop_assert_eq!(m.determinant(), BigInt::from(det));
            let s = smith_normal_form(&m);
            if det != 0 {
                let product: BigInt = s.diagonal.iter().product();
                prop_assert_eq!(product, BigInt::from(det.abs()));
            } else {
                prop_assert!(s.rank < n);
            }
        }
    }
}
