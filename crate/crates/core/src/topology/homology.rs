use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::SimplicialComplex;
use crate::linalg::{smith_normal_form, IntMatrix};

/// A sparse integer column: `(row, value)` pairs with distinct rows.
pub type SparseColumn = Vec<(usize, i64)>;

/// Simplicial chains with oriented simplices in increasing vertex order.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    faces: Vec<Vec<Vec<usize>>>,
    /// `boundaries[k - 1]` is `∂_k: C_k → C_{k-1}`, one sparse column per `k`-face.
    boundaries: Vec<Vec<SparseColumn>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub betti: Vec<usize>,
    /// Torsion coefficients of `H_k`, one list per dimension.
    pub torsion: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

impl ChainComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let faces = k.faces();
        let mut boundaries = Vec::new();
        for d in 1..faces.len() {
            let index: HashMap<&[usize], usize> =
                faces[d - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
            let cols = faces[d]
                .iter()
                .map(|s| {
                    let mut col: SparseColumn = (0..s.len())
                        .map(|i| {
                            let mut face = s.clone();
                            face.remove(i);
                            (index[face.as_slice()], if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(cols);
        }
        Self { faces, boundaries }
    }

    pub fn faces(&self, dim: usize) -> &[Vec<usize>] {
        self.faces.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn top_dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn sparse_boundary(&self, k: usize) -> &[SparseColumn] {
        assert!(k >= 1);
        self.boundaries.get(k - 1).map_or(&[], Vec::as_slice)
    }

    /// `∂_k` as a dense matrix with rows indexed by `(k-1)`-faces and columns by `k`-faces.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        let rows = self.faces(k - 1).len();
        let cols = self.sparse_boundary(k);
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for &(i, x) in col {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Whether `∂_{k-1} ∘ ∂_k = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        for k in 2..=self.boundaries.len() {
            let lower = &self.boundaries[k - 2];
            for col in &self.boundaries[k - 1] {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(i, x) in col {
                    for &(r, y) in &lower[i] {
                        *acc.entry(r).or_default() += x * y;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn homology(&self) -> Homology {
        let n = self.faces.len();
        let mut ranks = vec![0usize; n + 1];
        let mut torsions = vec![Vec::new(); n + 1];
        for k in 1..n {
            let (r, t) = sparse_smith(self.faces[k - 1].len(), &self.boundaries[k - 1]);
            ranks[k] = r;
            torsions[k] = t;
        }
        let betti = (0..n).map(|k| self.faces[k].len() - ranks[k] - ranks[k + 1]).collect();
        let torsion = (0..n).map(|k| torsions[k + 1].clone()).collect();
        Homology { betti, torsion }
    }
}

/// Rank and torsion coefficients of a sparse integer matrix.
///
/// Unit pivots are eliminated sparsely: once the pivot row is cleared from every
/// other column by column operations, the pivot row and column split off without
/// touching the rest. The remaining block goes through the dense Smith form.
pub fn sparse_smith(rows: usize, columns: &[SparseColumn]) -> (usize, Vec<u64>) {
    match sparse_unit_elimination(rows, columns) {
        Some((units, rest)) => {
            let snf = smith_normal_form(&rest);
            (units + snf.rank, snf.torsion_u64())
        }
        None => {
            let mut m = IntMatrix::zeros(rows, columns.len());
            for (j, col) in columns.iter().enumerate() {
                for &(i, x) in col {
                    m.set(i, j, x);
                }
            }
            let snf = smith_normal_form(&m);
            (snf.rank, snf.torsion_u64())
        }
    }
}

/// `None` on i64 overflow.
fn sparse_unit_elimination(rows: usize, columns: &[SparseColumn]) -> Option<(usize, IntMatrix)> {
    let mut cols: Vec<BTreeMap<usize, i64>> = columns.iter().map(|c| c.iter().copied().collect()).collect();
    let mut row_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            row_index[i].insert(j);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut units = 0;
    loop {
        let mut progress = false;
        for j in 0..cols.len() {
            if !alive[j] {
                continue;
            }
            if cols[j].is_empty() {
                alive[j] = false;
                continue;
            }
            let pivot = cols[j]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(&i, _)| (row_index[i].len(), i))
                .map(|(&i, &v)| (i, v));
            let (p, s) = match pivot {
                Some(x) => x,
                None => continue,
            };
            let pivot_col = cols[j].clone();
            let others: Vec<usize> = row_index[p].iter().copied().filter(|&k| k != j).collect();
            for k in others {
                let a = cols[k][&p];
                let factor = a.checked_mul(s)?;
                for (&i, &x) in &pivot_col {
                    let delta = factor.checked_mul(x)?;
                    let entry = cols[k].entry(i).or_insert(0);
                    *entry = entry.checked_sub(delta)?;
                    if *entry == 0 {
                        cols[k].remove(&i);
                        row_index[i].remove(&k);
                    } else {
                        row_index[i].insert(k);
                    }
                }
            }
            for &i in pivot_col.keys() {
                row_index[i].remove(&j);
            }
            cols[j].clear();
            alive[j] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest_cols: Vec<usize> = (0..cols.len()).filter(|&j| alive[j]).collect();
    let rest_rows: Vec<usize> = (0..rows).filter(|&i| !row_index[i].is_empty()).collect();
    let pos: HashMap<usize, usize> = rest_rows.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let mut m = IntMatrix::zeros(rest_rows.len(), rest_cols.len());
    for (b, &j) in rest_cols.iter().enumerate() {
        for (&i, &x) in &cols[j] {
            m.set(pos[&i], b, x);
        }
    }
    Some((units, m))
}
