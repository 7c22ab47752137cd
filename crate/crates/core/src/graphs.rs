//! Finite multigraphs with half-edges. Edge `i` owns half-edges `2i` and `2i + 1`;
//! the involution flips the low bit. Half-edge `2i` sits at the tail `edges[i].0`.

use std::collections::BTreeMap;

use crate::binary_matroid::BinaryMatroid;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::oriented::{FreelyOrientedMatroid, SignedSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            let bad = u.max(v);
            if bad >= vertices {
                return Err(Error::DimensionMismatch { expected: vertices, found: bad + 1 });
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Parses `"V E"` followed by `E` lines `"u v"`. Blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("expected a count, found {s:?}") })
            };
            match parts.as_slice() {
                [a, b] => Ok((num(a)?, num(b)?)),
                _ => Err(Error::Parse { line, message: "expected two integers".into() }),
            }
        };
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty graph file".into() })?;
        let (v, e) = parse_pair(hl, header)?;
        let mut edges = Vec::with_capacity(e);
        for (line, l) in lines {
            let (a, b) = parse_pair(line, l)?;
            if a >= v || b >= v {
                return Err(Error::Parse { line, message: format!("endpoint out of range 0..{v}") });
            }
            edges.push((a, b));
        }
        if edges.len() != e {
            return Err(Error::Parse { line: hl, message: format!("header announces {e} edges, found {}", edges.len()) });
        }
        Ok(Self { vertices: v, edges })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertices, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn involution(h: usize) -> usize {
        h ^ 1
    }

    /// The vertex a half-edge is attached to.
    pub fn incidence(&self, h: usize) -> usize {
        let (u, v) = self.edges[h / 2];
        if h.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    fn components_without(&self, skip: Option<usize>) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.vertices;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(None) <= 1
    }

    pub fn is_separating(&self, e: usize) -> bool {
        self.components_without(Some(e)) > self.components_without(None)
    }

    pub fn delete_edge(&self, e: usize) -> Result<Graph> {
        if e >= self.edges.len() {
            return Err(Error::NoSuchEdge(e));
        }
        if self.is_separating(e) {
            return Err(Error::SeparatingEdge(e));
        }
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Graph { vertices: self.vertices, edges })
    }

    /// Identifies the endpoints of `e` (the head is merged into the tail) and removes `e`.
    /// Edges parallel to `e` become loops.
    pub fn contract_edge(&self, e: usize) -> Result<Graph> {
        if e >= self.edges.len() {
            return Err(Error::NoSuchEdge(e));
        }
        let (keep, gone) = self.edges[e];
        if keep == gone {
            return Err(Error::LoopEdge(e));
        }
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        Ok(Graph { vertices: self.vertices - 1, edges })
    }

    /// Signed incidence matrix: the column of edge `(u, v)` is `e_v - e_u`; loops give zero columns.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertices, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                m.set(u, j, -1);
                m.set(v, j, 1);
            }
        }
        m
    }
}

pub fn complete_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph { vertices: n, edges }
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 1);
    Graph { vertices: n, edges: (0..n).map(|i| (i, (i + 1) % n)).collect() }
}

pub fn path_graph(vertices: usize) -> Graph {
    assert!(vertices >= 1);
    Graph { vertices, edges: (1..vertices).map(|i| (i - 1, i)).collect() }
}

/// Oriented circuits are the oriented cycles of the graph.
pub fn graphic_matroid(g: &Graph) -> Result<FreelyOrientedMatroid> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    Ok(FreelyOrientedMatroid::from_signed_matrix(&g.incidence_matrix()))
}

/// Circuits are the minimal oriented cuts of the graph.
pub fn cographic_matroid(g: &Graph) -> Result<FreelyOrientedMatroid> {
    graphic_matroid(g)?.dual()
}

/// The graphic matroid reduced mod 2, as a binary matroid.
pub fn graphic_binary_matroid(g: &Graph) -> Result<BinaryMatroid> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let m = g.incidence_matrix();
    let cols: Vec<u64> = (0..m.cols())
        .map(|j| (0..m.rows()).fold(0u64, |w, i| w | (((m.get(i, j) & 1) as u64) << i)))
        .collect();
    Ok(BinaryMatroid::from_vectors(m.rows(), &cols))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Half-edge automorphisms of `g` (bijections commuting with the involution and
/// the incidence map), counted by vertex permutation with multiplicity factors.
pub fn graph_automorphism_count(g: &Graph) -> u128 {
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in &g.edges {
        *mult.entry((u.min(v), u.max(v))).or_default() += 1;
    }
    let per_map: u128 = mult
        .iter()
        .map(|(&(u, v), &m)| factorial(m) * if u == v { 1u128 << m } else { 1 })
        .product();
    let n = g.vertices;
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        mult: &BTreeMap<(usize, usize), usize>,
    ) -> u128 {
        let n = perm.len();
        if k == n {
            return 1;
        }
        let mut total = 0;
        for t in 0..n {
            if used[t] {
                continue;
            }
            perm[k] = t;
            let ok = (0..=k).all(|a| {
                let key = (a.min(k), a.max(k));
                let img = (perm[a].min(t), perm[a].max(t));
                mult.get(&key) == mult.get(&img)
            });
            if ok {
                used[t] = true;
                total += extend(k + 1, perm, used, mult);
                used[t] = false;
            }
        }
        perm[k] = usize::MAX;
        total
    }
    extend(0, &mut perm, &mut used, &mult) * per_map
}

/// Signed permutations of the element pairs mapping the signed-circuit family onto itself.
pub fn matroid_automorphism_count(m: &FreelyOrientedMatroid) -> u128 {
    let n = m.len();
    let circuits: std::collections::HashSet<SignedSet> = m.signed_circuits().iter().copied().collect();
    // circuits grouped by their largest element, checked once that element is assigned
    let mut by_max: Vec<Vec<SignedSet>> = vec![Vec::new(); n];
    for c in m.signed_circuits() {
        if let Some(top) = c.support().iter().last() {
            by_max[top].push(*c);
        }
    }
    struct Search<'a> {
        n: usize,
        target: Vec<usize>,
        negated: Vec<bool>,
        used: Vec<bool>,
        circuits: &'a std::collections::HashSet<SignedSet>,
        by_max: &'a [Vec<SignedSet>],
    }
    impl Search<'_> {
        fn image(&self, c: SignedSet) -> SignedSet {
            let mut out = SignedSet::default();
            for e in c.support().iter() {
                let neg = c.neg.contains(e) ^ self.negated[e];
                let t = self.target[e];
                if neg {
                    out.neg = out.neg.with(t);
                } else {
                    out.pos = out.pos.with(t);
                }
            }
            out
        }
        fn run(&mut self, k: usize) -> u128 {
            if k == self.n {
                return 1;
            }
            let mut total = 0;
            for t in 0..self.n {
                if self.used[t] {
                    continue;
                }
                self.used[t] = true;
                self.target[k] = t;
                for neg in [false, true] {
                    self.negated[k] = neg;
                    if self.by_max[k].iter().all(|&c| self.circuits.contains(&self.image(c))) {
                        total += self.run(k + 1);
                    }
                }
                self.used[t] = false;
            }
            total
        }
    }
    let mut s = Search {
        n,
        target: vec![0; n],
        negated: vec![false; n],
        used: vec![false; n],
        circuits: &circuits,
        by_max: &by_max,
    };
    // circuits map to circuits and the family is finite, so this is a bijection on circuits
    s.run(0)
}

/// `(graph automorphisms, automorphisms of the graphic matroid)`.
pub fn automorphism_count_matroid_vs_graph(g: &Graph) -> Result<(u128, u128)> {
    let m = graphic_matroid(g)?;
    Ok((graph_automorphism_count(g), matroid_automorphism_count(&m)))
}
