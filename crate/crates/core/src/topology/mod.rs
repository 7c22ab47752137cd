//! Finite simplicial complexes given by their facets.

mod homology;
mod pi1;
mod shelling;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

pub use homology::{ChainComplex, Homology, HomologyReport, SparseColumn};
pub use pi1::{pi1_trivial, Pi1Status, DEFAULT_TIETZE_BUDGET};
pub use shelling::{find_shelling, find_shelling_with_budget, verify_shelling, ShellingOutcome, DEFAULT_SHELLING_BUDGET};

/// A simplicial complex on vertices `0..vertex_count`. Facets are sorted vertex lists,
/// maximal under inclusion, and kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Complex generated by `simplices`; non-maximal ones are dropped.
    pub fn new(vertex_count: usize, simplices: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.last() {
                if v >= vertex_count {
                    return Err(Error::DimensionMismatch { expected: vertex_count, found: v + 1 });
                }
                set.insert(s);
            }
        }
        let all: Vec<Vec<usize>> = set.into_iter().collect();
        let facets = maximal_only(all);
        Ok(Self { vertex_count, facets })
    }

    pub(crate) fn from_maximal(vertex_count: usize, mut facets: Vec<Vec<usize>>) -> Self {
        facets.sort();
        Self { vertex_count, facets }
    }

    /// The full simplex on `n + 1` vertices.
    pub fn simplex(n: usize) -> Self {
        Self { vertex_count: n + 1, facets: vec![(0..=n).collect()] }
    }

    /// The boundary of the `n`-simplex, an `(n-1)`-sphere.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets = (0..=n).rev().map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
        Self::from_maximal(n + 1, facets)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => self.facets.iter().all(|g| g.len() == f.len()),
        }
    }

    /// All nonempty faces, grouped by dimension, each group in lexicographic order.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let dim = match self.dimension() {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..1 << k {
                let face: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| face.iter().all(|v| f.binary_search(v).is_ok()))
    }

    /// Vertices used by some facet.
    pub fn used_vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    pub fn is_connected(&self) -> bool {
        let used = self.used_vertices();
        if used.is_empty() {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, used[0]);
        used.iter().all(|&v| find(&mut parent, v) == root)
    }

    /// Faces of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let faces = self.faces();
        let mut simplices = Vec::new();
        for group in faces.into_iter().take(k + 1) {
            simplices.extend(group);
        }
        SimplicialComplex::new(self.vertex_count, simplices).expect("faces lie in the vertex range")
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::new(self)
    }

    pub fn homology(&self) -> Homology {
        self.chain_complex().homology()
    }

    pub fn homology_report(&self) -> HomologyReport {
        let h = self.homology();
        HomologyReport { f_vector: self.f_vector(), euler: self.euler_characteristic(), betti: h.betti, torsion: h.torsion }
    }

    /// Vertices are the faces of `self` (in the order of [`faces`](Self::faces), flattened);
    /// simplices are chains of faces under inclusion.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let faces: Vec<Vec<usize>> = self.faces().into_iter().flatten().collect();
        let index: HashMap<&[usize], usize> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut flags = Vec::new();
        for f in &self.facets {
            // every ordering of the facet's vertices gives one maximal flag
            let mut perm: Vec<usize> = f.clone();
            permutations(&mut perm, 0, &mut |p| {
                let mut flag = Vec::with_capacity(p.len());
                for k in 1..=p.len() {
                    let mut face = p[..k].to_vec();
                    face.sort_unstable();
                    flag.push(index[face.as_slice()]);
                }
                flag.sort_unstable();
                flags.push(flag);
            });
        }
        flags.sort();
        flags.dedup();
        SimplicialComplex::from_maximal(faces.len(), flags)
    }

    /// Image under a vertex map; `None` unless it maps facets onto facets bijectively.
    pub fn permute(&self, perm: &[usize]) -> Option<SimplicialComplex> {
        if perm.len() != self.vertex_count {
            return None;
        }
        let mut image: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        image.sort();
        (image == self.facets).then(|| self.clone())
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn is_subset_sorted(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn maximal_only(mut all: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    // larger simplices first, so each candidate is only compared with kept ones
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in all {
        if !kept.iter().any(|k| k.len() > s.len() && is_subset_sorted(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Order complex of a finite poset on `0..n`: simplices are chains, facets maximal chains.
/// `less(a, b)` must be a strict partial order.
pub fn order_complex(n: usize, less: impl Fn(usize, usize) -> bool) -> SimplicialComplex {
    let below: Vec<Vec<usize>> = (0..n).map(|b| (0..n).filter(|&a| less(a, b)).collect()).collect();
    // b covers a iff a < b and no c lies strictly between
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in 0..n {
        for &a in &below[b] {
            if !below[b].iter().any(|&c| less(a, c)) {
                up[a].push(b);
            }
        }
    }
    let mut chains = Vec::new();
    let mut path = Vec::new();
    fn walk(x: usize, up: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(x);
        if up[x].is_empty() {
            let mut c = path.clone();
            c.sort_unstable();
            out.push(c);
        } else {
            for &y in &up[x] {
                walk(y, up, path, out);
            }
        }
        path.pop();
    }
    for x in 0..n {
        if below[x].is_empty() {
            walk(x, &up, &mut path, &mut chains);
        }
    }
    SimplicialComplex::from_maximal(n, chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_complex_examples() {
        let antichain = order_complex(4, |_, _| false);
        assert_eq!(antichain.f_vector(), vec![4]);
        let chain = order_complex(2, |a, b| a < b);
        assert_eq!(chain.facets(), &[vec![0, 1]]);
        // the four nodes of IR(2,F2): three bases below the full set
        let ir2 = order_complex(4, |a, b| a < 3 && b == 3);
        assert_eq!(ir2.f_vector(), vec![4, 3]);
        assert_eq!(ir2.homology().betti, vec![1, 0]);
    }

    #[test]
    fn faces_and_euler() {
        let t = SimplicialComplex::simplex(2);
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        assert_eq!(t.euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::simplex(0).euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::simplex_boundary(3).euler_characteristic(), 2);
    }

    #[test]
    fn normalization_drops_non_maximal() {
        let k = SimplicialComplex::new(4, vec![vec![0, 1], vec![1, 0, 2], vec![3], vec![2, 1]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2], vec![3]]);
        assert!(!k.is_pure());
        assert!(!k.is_connected());
        assert!(SimplicialComplex::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn subdivision_examples() {
        let edge = SimplicialComplex::simplex(1).barycentric_subdivision();
        assert_eq!(edge.f_vector(), vec![3, 2]);
        let tri = SimplicialComplex::simplex(2).barycentric_subdivision();
        assert_eq!(tri.facets().len(), 6);
        assert_eq!(tri.homology().betti, vec![1, 0, 0]);
        let sphere = SimplicialComplex::simplex_boundary(3);
        assert_eq!(sphere.barycentric_subdivision().homology().betti, vec![1, 0, 1]);
    }

    #[test]
    fn permutation_action() {
        let k = SimplicialComplex::simplex_boundary(2);
        assert!(k.permute(&[1, 2, 0]).is_some());
        let path = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(path.permute(&[1, 0, 2]).is_none());
        assert!(path.permute(&[2, 1, 0]).is_some());
    }
}
