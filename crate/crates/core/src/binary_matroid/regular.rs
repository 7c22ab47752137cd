//! Regularity of binary matroids: Fano-minor search and totally unimodular signing.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{BinaryMatroid, Combinations, GroundSubset};
use crate::linalg::{IntMatrix, WordBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FanoKind {
    F7,
    F7Dual,
    Neither,
}

/// Witness of non-regularity: `M \ delete / contract` is isomorphic to `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoMinor {
    pub kind: FanoKind,
    pub delete: GroundSubset,
    pub contract: GroundSubset,
}

pub(super) fn fano_kind(m: &BinaryMatroid) -> FanoKind {
    if is_fano_plane(m) {
        FanoKind::F7
    } else if m.len() == 7 && m.rank() == 4 && is_fano_plane(&m.dual()) {
        FanoKind::F7Dual
    } else {
        FanoKind::Neither
    }
}

/// Seven distinct nonzero columns in a rank-3 space are the whole of `F_2^3 \ 0`.
fn is_fano_plane(m: &BinaryMatroid) -> bool {
    if m.len() != 7 || m.rank() != 3 {
        return false;
    }
    let mut seen = 0u8;
    for &c in m.columns() {
        if c == 0 || seen >> c & 1 == 1 {
            return false;
        }
        seen |= 1 << c;
    }
    true
}

/// Independent sets of size `k`, in increasing mask order.
fn independent_sets(m: &BinaryMatroid, k: usize) -> impl Iterator<Item = GroundSubset> + '_ {
    Combinations::new(m.len(), k).filter(move |&s| m.is_independent(s))
}

/// Every minor can be taken with an independent contraction set. Contracting an
/// independent `I` of size `r - 3` leaves a rank-3 quotient, which has an `F7`
/// restriction iff its columns meet all seven nonzero cosets. Contracting `I` of
/// size `r - 4` leaves a rank-4 quotient, which has an `F7*` restriction iff seven
/// distinct cosets lie off some hyperplane, since `F7*` is `AG(3,2)` minus a point.
pub(super) fn find_fano_minor(m: &BinaryMatroid) -> Option<FanoMinor> {
    let r = m.rank();
    let n = m.len();
    if n < 7 || r < 3 {
        return None;
    }
    let ground = m.ground();

    for contract in independent_sets(m, r - 3) {
        let span = WordBasis::from_vectors(contract.iter().map(|e| m.columns()[e]));
        let mut reps: BTreeMap<u64, usize> = BTreeMap::new();
        for e in ground.difference(contract).iter() {
            let v = span.reduce(m.columns()[e]);
            if v != 0 {
                reps.entry(v).or_insert(e);
            }
        }
        if reps.len() == 7 {
            let keep = GroundSubset::from_indices(reps.values().copied());
            let witness = FanoMinor {
                kind: FanoKind::F7,
                delete: ground.difference(keep.union(contract)),
                contract,
            };
            debug_assert_eq!(check_witness(m, &witness), FanoKind::F7);
            return Some(witness);
        }
    }

    if r < 4 {
        return None;
    }
    for contract in independent_sets(m, r - 4) {
        let span = WordBasis::from_vectors(contract.iter().map(|e| m.columns()[e]));
        let reduced: Vec<(usize, u64)> = ground
            .difference(contract)
            .iter()
            .map(|e| (e, span.reduce(m.columns()[e])))
            .collect();
        let annihilates_contract =
            |f: u64| contract.iter().all(|e| (f & m.columns()[e]).count_ones().is_multiple_of(2));
        for f in (1u64..1 << r).filter(|&f| annihilates_contract(f)) {
            let mut reps: BTreeMap<u64, usize> = BTreeMap::new();
            for &(e, v) in &reduced {
                if (f & v).count_ones() % 2 == 1 {
                    reps.entry(v).or_insert(e);
                }
            }
            if reps.len() >= 7 {
                let mut chosen: Vec<usize> = reps.values().copied().collect();
                chosen.sort_unstable();
                chosen.truncate(7);
                let keep = GroundSubset::from_indices(chosen);
                let witness = FanoMinor {
                    kind: FanoKind::F7Dual,
                    delete: ground.difference(keep.union(contract)),
                    contract,
                };
                debug_assert_eq!(check_witness(m, &witness), FanoKind::F7Dual);
                return Some(witness);
            }
        }
    }
    None
}

/// Realizes a witness and classifies the resulting minor.
pub fn check_witness(m: &BinaryMatroid, w: &FanoMinor) -> FanoKind {
    m.minor(w.delete, w.contract).map_or(FanoKind::Neither, |minor| minor.fano_kind())
}

/// A totally unimodular matrix reducing mod 2 to a representation of the matroid.
#[derive(Clone, Debug)]
pub struct TuSigning {
    /// Pivot (basis) columns of the standard form `[I | D]`.
    pub basis: Vec<usize>,
    /// Signed `rank x n` representation in the original column order; the basis
    /// columns are unit vectors.
    pub matrix: IntMatrix,
}

struct Bipartite {
    /// `rows + cols` vertices; rows first.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Bipartite {
    fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        // returns edge ids along a shortest path
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.adjacency.len()];
        let mut seen = vec![false; self.adjacency.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut edges = Vec::new();
                let mut cur = to;
                while let Some((p, e)) = prev[cur] {
                    edges.push(e);
                    cur = p;
                }
                return Some(edges);
            }
            for &(v, e) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, e));
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

/// Camion signing of the standard form followed by exhaustive verification.
///
/// A spanning forest of the support graph of `D` is signed `+1`. Remaining edges
/// are added in order of increasing distance between their endpoints in the
/// graph built so far; that choice makes each closing cycle chordless in the full
/// support graph, and the new entry is signed so the cycle sums to 0 mod 4. The
/// result is the unique balanced signing up to scaling, so the matroid is regular
/// iff it is totally unimodular.
pub(super) fn tu_signing(m: &BinaryMatroid) -> Option<TuSigning> {
    let r = m.rank();
    let n = m.len();
    let (reduced, pivots) = m.to_matrix().rref();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let q = free.len();

    // edges (row, free column index)
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..r {
        for (k, &j) in free.iter().enumerate() {
            if reduced.get(i, j) {
                edges.push((i, k));
            }
        }
    }
    let mut sign = vec![0i64; edges.len()];
    let mut graph = Bipartite { adjacency: vec![Vec::new(); r + q] };
    let add = |graph: &mut Bipartite, id: usize| {
        let (i, k) = edges[id];
        graph.adjacency[i].push((r + k, id));
        graph.adjacency[r + k].push((i, id));
    };

    // spanning forest
    let mut placed = vec![false; edges.len()];
    let mut component = vec![usize::MAX; r + q];
    for start in 0..r + q {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for (id, &(i, k)) in edges.iter().enumerate() {
                let (a, b) = (i, r + k);
                let v = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if component[v] == usize::MAX {
                    component[v] = start;
                    sign[id] = 1;
                    placed[id] = true;
                    add(&mut graph, id);
                    queue.push_back(v);
                }
            }
        }
    }

    loop {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for id in (0..edges.len()).filter(|&id| !placed[id]) {
            let (i, k) = edges[id];
            let path = graph.path(i, r + k).expect("forest spans each component");
            if best.as_ref().is_none_or(|(_, p)| path.len() < p.len()) {
                best = Some((id, path));
            }
        }
        let Some((id, path)) = best else { break };
        let total: i64 = path.iter().map(|&e| sign[e]).sum();
        sign[id] = if (total + 1).rem_euclid(4) == 0 { 1 } else { -1 };
        placed[id] = true;
        add(&mut graph, id);
    }

    let mut d = vec![vec![0i64; q]; r];
    for (id, &(i, k)) in edges.iter().enumerate() {
        d[i][k] = sign[id];
    }
    if !is_totally_unimodular(&d) {
        return None;
    }
    let mut matrix = IntMatrix::zeros(r, n);
    for (i, &p) in pivots.iter().enumerate() {
        matrix.set(i, p, 1);
    }
    for (k, &j) in free.iter().enumerate() {
        for (i, row) in d.iter().enumerate() {
            matrix.set(i, j, row[k]);
        }
    }
    Some(TuSigning { basis: pivots, matrix })
}

/// Every square submatrix has determinant in `{-1, 0, 1}`.
pub fn is_totally_unimodular(d: &[Vec<i64>]) -> bool {
    let rows = d.len();
    let cols = d.first().map_or(0, Vec::len);
    if d.iter().flatten().any(|x| x.abs() > 1) {
        return false;
    }
    for k in 2..=rows.min(cols) {
        for rs in Combinations::new(rows, k) {
            let rs: Vec<usize> = rs.iter().collect();
            for cs in Combinations::new(cols, k) {
                let sub: Vec<Vec<i64>> =
                    rs.iter().map(|&i| cs.iter().map(|j| d[i][j]).collect()).collect();
                if small_det(sub).abs() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Bareiss determinant for small matrices with small entries.
fn small_det(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
