//! The posets `IR(r, F_2)` of regular spanning subsets of `F_2^r - 0`, the complement
//! complex for `r = 3`, and the local structure of `IR(2, Z)`.
//!
//! Point `i` of `F_2^r - 0` is the vector whose binary value is `i + 1`, first
//! coordinate most significant, so points are in lexicographic order.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binary_matroid::{sort_canonically, BinaryMatroid, Combinations, GroundSubset};
use crate::error::{Error, Result};
use crate::topology::{order_complex, pi1_trivial, Pi1Status, SimplicialComplex};

pub const MAX_IR_RANK: usize = 4;
pub const MAX_BALL_DEPTH: usize = 12;

pub fn point_count(r: usize) -> usize {
    (1 << r) - 1
}

/// Coordinate vector of point `i` as a bit word (bit `r - 1 - k` is coordinate `k`).
pub fn point_word(i: usize) -> u64 {
    i as u64 + 1
}

pub fn point_index(word: u64) -> usize {
    assert!(word != 0, "zero is not a point");
    word as usize - 1
}

/// Binary matroid whose columns are the points of `s`, in increasing order.
pub fn subset_matroid(r: usize, s: GroundSubset) -> BinaryMatroid {
    let cols: Vec<u64> = s.iter().map(point_word).collect();
    BinaryMatroid::from_vectors(r, &cols)
}

/// Whether `s` spans `F_2^r` and is a regular matroid.
pub fn is_ir_node(r: usize, s: GroundSubset) -> bool {
    let m = subset_matroid(r, s);
    m.rank() == r && m.is_regular()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrPoset {
    pub r: usize,
    /// Ordered by size, then by index list.
    pub nodes: Vec<GroundSubset>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub subsets_scanned: usize,
    /// Subsets whose regularity was recomputed by the minor search.
    pub spot_checks: usize,
    pub spot_check_mismatches: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Rank 4 scans `2^15` subsets and must be requested explicitly.
    pub allow_rank4: bool,
    /// Fraction of rank-4 subsets whose signing verdict is cross-checked by the minor search.
    pub spot_check_fraction: f64,
    pub seed: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self { allow_rank4: false, spot_check_fraction: 0.01, seed: 0 }
    }
}

/// `IR(r, F_2)` for `r <= 3`.
pub fn enumerate_ir_f2(r: usize) -> Result<IrPoset> {
    enumerate_ir_f2_with(r, EnumerateOptions::default()).map(|(p, _)| p)
}

pub fn enumerate_ir_f2_with(r: usize, opts: EnumerateOptions) -> Result<(IrPoset, EnumerationStats)> {
    let max = if opts.allow_rank4 { MAX_IR_RANK } else { MAX_IR_RANK - 1 };
    if r == 0 || r > max {
        return Err(Error::RankTooLarge { rank: r, max });
    }
    let n = point_count(r);
    let use_signing = r == MAX_IR_RANK;
    let scanned = 1usize << n;
    // sampling decisions are drawn up front so that they do not depend on scheduling
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sampled: Vec<bool> = if use_signing {
        (0..scanned).map(|_| rng.gen_bool(opts.spot_check_fraction.clamp(0.0, 1.0))).collect()
    } else {
        Vec::new()
    };
    let verdicts: Vec<(GroundSubset, bool, bool, bool)> = (1u64..scanned as u64)
        .into_par_iter()
        .filter_map(|mask| {
            let s = GroundSubset::from_mask(mask);
            let m = subset_matroid(r, s);
            if m.rank() != r {
                return None;
            }
            if !use_signing {
                return Some((s, m.is_regular(), false, false));
            }
            let regular = m.is_regular_tu();
            let checked = sampled[mask as usize];
            let mismatch = checked && m.is_regular() != regular;
            Some((s, regular, checked, mismatch))
        })
        .collect();
    let mut stats = EnumerationStats { subsets_scanned: scanned - 1, ..Default::default() };
    let mut nodes = Vec::new();
    for (s, regular, checked, mismatch) in verdicts {
        stats.spot_checks += checked as usize;
        stats.spot_check_mismatches += mismatch as usize;
        if regular {
            nodes.push(s);
        }
    }
    sort_canonically(&mut nodes);
    Ok((IrPoset { r, nodes }, stats))
}

impl IrPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, s: GroundSubset) -> Option<usize> {
        // nodes are sorted by (size, index list)
        let key = (s.len(), s.to_vec());
        self.nodes.binary_search_by(|x| (x.len(), x.to_vec()).cmp(&key)).ok()
    }

    pub fn contains(&self, s: GroundSubset) -> bool {
        self.index_of(s).is_some()
    }

    /// Whether all of `F_2^r - 0` is itself a node.
    pub fn contains_full_set(&self) -> bool {
        self.contains(GroundSubset::full(point_count(self.r)))
    }

    /// Chains of nodes under strict inclusion.
    pub fn order_complex(&self) -> SimplicialComplex {
        let nodes = &self.nodes;
        order_complex(nodes.len(), |a, b| nodes[a] != nodes[b] && nodes[a].is_subset(nodes[b]))
    }

    /// Cover relations `(lower, upper)` as node indices.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (i, &s) in self.nodes.iter().enumerate() {
            for (j, &t) in self.nodes.iter().enumerate() {
                if s.len() < t.len() && s.is_subset(t) {
                    let between = self.nodes.iter().any(|&u| u != s && u != t && s.is_subset(u) && u.is_subset(t));
                    if !between {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Number of chains with `k + 1` elements, for each `k`: the f-vector of the
    /// order complex, without building it. Nodes are closed under passing to spanning
    /// subsets, so the nodes below `x` are found among its subsets.
    pub fn chain_counts(&self) -> Vec<u128> {
        let index: HashMap<GroundSubset, usize> = self.nodes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        // per node: number of chains ending there, by length
        let mut ending: Vec<Vec<u128>> = Vec::with_capacity(self.nodes.len());
        let mut totals: Vec<u128> = Vec::new();
        for &x in &self.nodes {
            let mut counts = vec![1u128];
            let m = x.mask();
            let mut sub = (m.wrapping_sub(1)) & m;
            while sub != 0 {
                let y = GroundSubset::from_mask(sub);
                if y.len() >= self.r {
                    if let Some(&j) = index.get(&y) {
                        for (k, &c) in ending[j].iter().enumerate() {
                            if counts.len() <= k + 1 {
                                counts.push(0);
                            }
                            counts[k + 1] += c;
                        }
                    }
                }
                sub = (sub - 1) & m;
            }
            for (k, &c) in counts.iter().enumerate() {
                if totals.len() <= k {
                    totals.push(0);
                }
                totals[k] += c;
            }
            ending.push(counts);
        }
        totals
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ir {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label: Vec<String> = n.iter().map(|p| point_label(self.r, p)).collect();
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", label.join(" "));
        }
        for (a, b) in self.hasse_edges() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub const DEFAULT_FACE_BUDGET: u128 = 2_000_000;

/// What is known about `IR(r, F_2)` within a face budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrSurvey {
    pub r: usize,
    pub nodes: usize,
    /// `(size, count)` pairs in increasing size.
    pub size_histogram: Vec<(usize, usize)>,
    pub contains_full_set: bool,
    pub stats: EnumerationStats,
    pub chain_counts: Vec<u128>,
    pub euler: i128,
    /// Faces of the 3-skeleton, which `b_2` and `pi_1` need.
    pub faces_needed: u128,
    pub face_budget: u128,
    /// `None` when the 3-skeleton exceeds the budget.
    pub b1: Option<usize>,
    pub b2: Option<usize>,
    pub pi1: Pi1Status,
}

/// Enumerates `IR(r, F_2)`, counts its chains exactly, and computes `b_1`, `b_2`
/// and `pi_1` of the order complex only when its 3-skeleton fits in `face_budget`.
pub fn survey_ir_f2(r: usize, opts: EnumerateOptions, face_budget: u128, tietze_budget: u64) -> Result<IrSurvey> {
    let (poset, stats) = enumerate_ir_f2_with(r, opts)?;
    let mut hist: Vec<(usize, usize)> = Vec::new();
    for s in &poset.nodes {
        match hist.last_mut() {
            Some((k, c)) if *k == s.len() => *c += 1,
            _ => hist.push((s.len(), 1)),
        }
    }
    let chain_counts = poset.chain_counts();
    let euler = chain_counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i128 } else { -(c as i128) }).sum();
    let faces_needed: u128 = chain_counts.iter().take(4).sum();
    let (b1, b2, pi1) = if faces_needed <= face_budget {
        let k = poset.order_complex();
        let h = k.skeleton(3).homology();
        let pi1 = pi1_trivial(&k, tietze_budget)?;
        (h.betti.get(1).copied().or(Some(0)), h.betti.get(2).copied().or(Some(0)), pi1)
    } else {
        (None, None, Pi1Status::Inconclusive)
    };
    Ok(IrSurvey {
        r,
        nodes: poset.len(),
        size_histogram: hist,
        contains_full_set: poset.contains_full_set(),
        stats,
        chain_counts,
        euler,
        faces_needed,
        face_budget,
        b1,
        b2,
        pi1,
    })
}

/// Coordinate string of point `i`, e.g. `011`.
pub fn point_label(r: usize, i: usize) -> String {
    let w = point_word(i);
    (0..r).rev().map(|k| if w >> k & 1 == 1 { '1' } else { '0' }).collect()
}

/// Hyperplane complements in `F_2^3 - 0`: the seven 4-point sets `{x : f·x = 1}`.
pub fn hyperplane_complements_r3() -> Vec<GroundSubset> {
    (1u64..8)
        .map(|f| GroundSubset::from_indices((0..7).filter(|&i| (point_word(i) & f).count_ones() % 2 == 1)))
        .collect()
}

/// The complex `P` on the seven points of `F_2^3 - 0`: all subsets of size at most
/// four except the hyperplane complements.
pub fn complement_complex_r3() -> SimplicialComplex {
    let bad = hyperplane_complements_r3();
    let mut simplices = Vec::new();
    for k in 1..=4 {
        for s in Combinations::new(7, k) {
            if !bad.contains(&s) {
                simplices.push(s.to_vec());
            }
        }
    }
    SimplicialComplex::new(7, simplices).expect("vertices are in range")
}

/// Signed vectors in `Z^2`, up to sign: the representative has a positive first nonzero coordinate.
pub fn canonical_pm(v: [i64; 2]) -> [i64; 2] {
    if v[0] < 0 || (v[0] == 0 && v[1] < 0) {
        [-v[0], -v[1]]
    } else {
        v
    }
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn add(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm2(a: [i64; 2]) -> i64 {
    a[0] * a[0] + a[1] * a[1]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ir2zKind {
    BasisPair,
    Triangle,
}

/// A node of `IR(2, Z)`: two vectors forming a basis, or three pairwise-unimodular
/// vectors summing to zero up to sign. Each `{v, -v}` is stored once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ir2zNode {
    pub kind: Ir2zKind,
    pub vectors: Vec<[i64; 2]>,
}

impl Ir2zNode {
    pub fn basis_pair(a: [i64; 2], b: [i64; 2]) -> Result<Self> {
        if det(a, b).abs() != 1 {
            return Err(Error::NotInPoset);
        }
        let mut vectors = vec![canonical_pm(a), canonical_pm(b)];
        vectors.sort_unstable();
        Ok(Self { kind: Ir2zKind::BasisPair, vectors })
    }

    pub fn triangle(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> Result<Self> {
        let unimodular = det(a, b).abs() == 1 && det(b, c).abs() == 1 && det(a, c).abs() == 1;
        let closes = [add(a, b), sub(a, b)].iter().any(|&s| canonical_pm(s) == canonical_pm(c));
        if !unimodular || !closes {
            return Err(Error::NotInPoset);
        }
        let mut vectors = vec![canonical_pm(a), canonical_pm(b), canonical_pm(c)];
        vectors.sort_unstable();
        Ok(Self { kind: Ir2zKind::Triangle, vectors })
    }

    pub fn standard_basis() -> Self {
        Self::basis_pair([1, 0], [0, 1]).expect("unimodular")
    }

    /// A basis pair lies in the two triangles adding `±(a+b)` or `±(a-b)`; a triangle
    /// contains its three basis pairs.
    pub fn neighbors(&self) -> Vec<Ir2zNode> {
        let v = &self.vectors;
        let mut out = match self.kind {
            Ir2zKind::BasisPair => vec![
                Self::triangle(v[0], v[1], add(v[0], v[1])).expect("basis sum closes a triangle"),
                Self::triangle(v[0], v[1], sub(v[0], v[1])).expect("basis difference closes a triangle"),
            ],
            Ir2zKind::Triangle => vec![
                Self::basis_pair(v[0], v[1]).expect("sides are unimodular"),
                Self::basis_pair(v[0], v[2]).expect("sides are unimodular"),
                Self::basis_pair(v[1], v[2]).expect("sides are unimodular"),
            ],
        };
        out.sort();
        out
    }

    /// Largest squared length among the vectors of a triangle.
    pub fn morse_value_squared(&self) -> Result<i64> {
        match self.kind {
            Ir2zKind::Triangle => Ok(self.vectors.iter().map(|&v| norm2(v)).max().unwrap_or(0)),
            Ir2zKind::BasisPair => Err(Error::NotATriangle),
        }
    }

    pub fn morse_value(&self) -> Result<f64> {
        self.morse_value_squared().map(|x| (x as f64).sqrt())
    }

    /// Triangles sharing a basis pair with `self` and having strictly smaller Morse value.
    pub fn descending_triangles(&self) -> Result<Vec<Ir2zNode>> {
        let here = self.morse_value_squared()?;
        let mut out = Vec::new();
        for pair in self.neighbors() {
            for t in pair.neighbors() {
                if t != *self && t.morse_value_squared()? < here {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }

    /// Whether the squared lengths satisfy `c^2 = a^2 + b^2` for the longest side `c`.
    pub fn is_right_triangle(&self) -> bool {
        self.kind == Ir2zKind::Triangle && {
            let mut l: Vec<i64> = self.vectors.iter().map(|&v| norm2(v)).collect();
            l.sort_unstable();
            l[2] == l[0] + l[1]
        }
    }

    pub fn is_obtuse_triangle(&self) -> bool {
        self.kind == Ir2zKind::Triangle && {
            let mut l: Vec<i64> = self.vectors.iter().map(|&v| norm2(v)).collect();
            l.sort_unstable();
            l[2] > l[0] + l[1]
        }
    }

    /// Reduction mod 2, as a subset of the points of `F_2^2 - 0`.
    pub fn reduce_mod2(&self) -> GroundSubset {
        GroundSubset::from_indices(self.vectors.iter().map(|v| {
            let w = ((v[0].rem_euclid(2) as u64) << 1) | v[1].rem_euclid(2) as u64;
            point_index(w)
        }))
    }
}

/// A breadth-first ball in the graph of `IR(2, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ir2zBall {
    pub nodes: Vec<Ir2zNode>,
    pub depth: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn ir2z_ball(center: &Ir2zNode, depth: usize) -> Result<Ir2zBall> {
    if depth > MAX_BALL_DEPTH {
        return Err(Error::DepthTooLarge { depth, max: MAX_BALL_DEPTH });
    }
    let mut index: HashMap<Ir2zNode, usize> = HashMap::new();
    let mut ball = Ir2zBall { nodes: vec![center.clone()], depth: vec![0], edges: Vec::new() };
    index.insert(center.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if ball.depth[i] == depth {
            continue;
        }
        for nb in ball.nodes[i].neighbors() {
            let j = match index.get(&nb) {
                Some(&j) => j,
                None => {
                    let j = ball.nodes.len();
                    index.insert(nb.clone(), j);
                    ball.nodes.push(nb);
                    ball.depth.push(ball.depth[i] + 1);
                    queue.push_back(j);
                    j
                }
            };
            let e = (i.min(j), i.max(j));
            ball.edges.push(e);
        }
    }
    ball.edges.sort_unstable();
    ball.edges.dedup();
    Ok(ball)
}

impl Ir2zBall {
    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.nodes.len()
    }

    pub fn summary(&self) -> BallSummary {
        let radius = self.depth.iter().copied().max().unwrap_or(0);
        let mut deg = vec![0usize; self.nodes.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut hist: BTreeMap<(Ir2zKind, usize), usize> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if self.depth[i] < radius {
                *hist.entry((n.kind, deg[i])).or_default() += 1;
            }
        }
        let mut images: Vec<GroundSubset> = self.nodes.iter().map(Ir2zNode::reduce_mod2).collect();
        sort_canonically(&mut images);
        images.dedup();
        let morse_minima = self
            .nodes
            .iter()
            .filter(|n| n.kind == Ir2zKind::Triangle && n.descending_triangles().is_ok_and(|d| d.is_empty()))
            .cloned()
            .collect();
        BallSummary {
            nodes: self.nodes.len(),
            edges: self.edges.len(),
            radius,
            acyclic: self.is_tree(),
            interior_degrees: hist.into_iter().map(|((kind, degree), count)| DegreeCount { kind, degree, count }).collect(),
            boundary_nodes: self.depth.iter().filter(|&&d| d == radius).count(),
            mod2_images: images,
            morse_minima,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCount {
    pub kind: Ir2zKind,
    pub degree: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallSummary {
    pub nodes: usize,
    pub edges: usize,
    pub radius: usize,
    pub acyclic: bool,
    /// Degrees of nodes strictly inside the ball, by kind.
    pub interior_degrees: Vec<DegreeCount>,
    pub boundary_nodes: usize,
    /// Distinct reductions mod 2, each a spanning subset of `F_2^2 - 0`.
    pub mod2_images: Vec<GroundSubset>,
    /// Triangles in the ball with no neighbouring triangle of smaller Morse value.
    pub morse_minima: Vec<Ir2zNode>,
}

impl Ir2zBall {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph ir2z {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label: Vec<String> = n.vectors.iter().map(|v| format!("({},{})", v[0], v[1])).collect();
            let shape = match n.kind {
                Ir2zKind::BasisPair => "ellipse",
                Ir2zKind::Triangle => "triangle",
            };
            let _ = writeln!(s, "  n{i} [label=\"{}\", shape={shape}];", label.join(" "));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survey_within_and_beyond_budget() {
        let s3 = survey_ir_f2(3, EnumerateOptions::default(), DEFAULT_FACE_BUDGET, 10_000).unwrap();
        assert_eq!(s3.nodes, 91);
        assert_eq!(s3.chain_counts, vec![91, 644, 1218, 672]);
        assert_eq!(s3.euler, -7);
        assert_eq!((s3.b1, s3.b2, s3.pi1), (Some(0), Some(0), Pi1Status::Trivial));
        assert!(!s3.contains_full_set);
        let opts = EnumerateOptions { allow_rank4: true, ..Default::default() };
        let s4 = survey_ir_f2(4, opts, DEFAULT_FACE_BUDGET, 10_000).unwrap();
        assert_eq!(s4.nodes, 21896);
        assert_eq!(s4.size_histogram, vec![(4, 840), (5, 2688), (6, 4900), (7, 6300), (8, 5040), (9, 1960), (10, 168)]);
        assert_eq!(s4.chain_counts[..2], [21896, 1763916]);
        assert_eq!(s4.euler, -1540);
        assert!(s4.faces_needed > DEFAULT_FACE_BUDGET);
        assert_eq!((s4.b2, s4.pi1), (None, Pi1Status::Inconclusive));
        assert_eq!(s4.stats.spot_check_mismatches, 0);
    }

    #[test]
    fn small_posets() {
        assert_eq!(enumerate_ir_f2(1).unwrap().nodes, vec![GroundSubset::full(1)]);
        let p2 = enumerate_ir_f2(2).unwrap();
        assert_eq!(p2.len(), 4);
        assert_eq!(p2.nodes.iter().filter(|s| s.len() == 2).count(), 3);
        assert!(p2.contains_full_set());
        assert_eq!(enumerate_ir_f2(5), Err(Error::RankTooLarge { rank: 5, max: 3 }));
        assert_eq!(enumerate_ir_f2(4), Err(Error::RankTooLarge { rank: 4, max: 3 }));
    }

    #[test]
    fn rank_three_matches_complement_description() {
        let p = enumerate_ir_f2(3).unwrap();
        assert_eq!(p.len(), 91);
        assert!(!p.contains_full_set());
        // complements: nonempty, at most four points, not a hyperplane complement
        let bad = hyperplane_complements_r3();
        let full = GroundSubset::full(7);
        let mut expected: Vec<GroundSubset> = (1u64..128)
            .map(GroundSubset::from_mask)
            .filter(|c| c.len() <= 4 && !bad.contains(c))
            .map(|c| full.difference(c))
            .collect();
        sort_canonically(&mut expected);
        assert_eq!(p.nodes, expected);
        for s in &p.nodes {
            assert!(is_ir_node(3, *s));
        }
    }

    #[test]
    fn order_complex_of_rank_two_is_a_tree() {
        let k = enumerate_ir_f2(2).unwrap().order_complex();
        assert_eq!(k.f_vector(), vec![4, 3]);
        assert_eq!(k.homology().betti, vec![1, 0]);
    }

    #[test]
    fn chain_counts_match_order_complex() {
        for r in 1..=3 {
            let p = enumerate_ir_f2(r).unwrap();
            let f: Vec<u128> = p.order_complex().f_vector().into_iter().map(|x| x as u128).collect();
            assert_eq!(p.chain_counts(), f);
        }
        assert_eq!(enumerate_ir_f2(3).unwrap().chain_counts(), vec![91, 644, 1218, 672]);
    }

    #[test]
    fn hasse_diagram_rank_two() {
        let p = enumerate_ir_f2(2).unwrap();
        assert_eq!(p.hasse_edges(), vec![(0, 3), (1, 3), (2, 3)]);
        assert!(p.to_dot().contains("n0 -> n3"));
    }

    #[test]
    fn complement_complex() {
        let k = complement_complex_r3();
        assert_eq!(k.f_vector(), vec![7, 21, 35, 28]);
        assert_eq!(k.euler_characteristic(), -7);
        assert_eq!(k.facets().len(), 28);
    }

    #[test]
    fn ir2z_neighbors() {
        let b = Ir2zNode::standard_basis();
        let n = b.neighbors();
        assert_eq!(n.len(), 2);
        assert_eq!(n[0].vectors, vec![[0, 1], [1, -1], [1, 0]]);
        assert_eq!(n[1].vectors, vec![[0, 1], [1, 0], [1, 1]]);
        for t in &n {
            assert_eq!(t.neighbors().len(), 3);
            assert!(t.neighbors().contains(&b));
        }
        assert_eq!(Ir2zNode::basis_pair([2, 0], [0, 1]), Err(Error::NotInPoset));
        assert_eq!(Ir2zNode::triangle([1, 0], [0, 1], [2, 1]), Err(Error::NotInPoset));
    }

    #[test]
    fn ir2z_balls() {
        let b = Ir2zNode::standard_basis();
        assert_eq!(ir2z_ball(&b, 0).unwrap().nodes.len(), 1);
        let d2 = ir2z_ball(&b, 2).unwrap();
        // 1 + 2 triangles + 2 new basis pairs per triangle
        assert_eq!(d2.nodes.len(), 7);
        assert!(d2.is_tree());
        let images: std::collections::BTreeSet<GroundSubset> = d2.nodes.iter().map(Ir2zNode::reduce_mod2).collect();
        assert_eq!(images.len(), 4);
        assert_eq!(ir2z_ball(&b, 13).unwrap_err(), Error::DepthTooLarge { depth: 13, max: 12 });
    }

    #[test]
    fn ball_summary_degrees() {
        let s = ir2z_ball(&Ir2zNode::standard_basis(), 4).unwrap().summary();
        assert!(s.acyclic);
        assert_eq!(s.radius, 4);
        for d in &s.interior_degrees {
            let want = if d.kind == Ir2zKind::BasisPair { 2 } else { 3 };
            assert_eq!(d.degree, want);
        }
        assert_eq!(s.mod2_images.len(), 4);
        assert_eq!(s.morse_minima.len(), 2);
        assert!(s.morse_minima.iter().all(Ir2zNode::is_right_triangle));
    }

    #[test]
    fn morse_values() {
        let right = Ir2zNode::triangle([1, 0], [0, 1], [1, 1]).unwrap();
        assert_eq!(right.morse_value_squared(), Ok(2));
        assert!(right.descending_triangles().unwrap().is_empty());
        assert!(right.is_right_triangle());
        let t = Ir2zNode::triangle([1, 0], [1, 1], [2, 1]).unwrap();
        assert_eq!(t.morse_value_squared(), Ok(5));
        assert_eq!(t.descending_triangles().unwrap(), vec![right]);
        assert_eq!(Ir2zNode::standard_basis().morse_value(), Err(Error::NotATriangle));
    }

    #[test]
    fn reduction_mod_two() {
        let b = Ir2zNode::standard_basis();
        // (0,1) is point 0, (1,0) is point 1, (1,1) is point 2
        assert_eq!(b.reduce_mod2(), GroundSubset::from_indices([0, 1]));
        let t = Ir2zNode::triangle([1, 0], [0, 1], [1, 1]).unwrap();
        assert_eq!(t.reduce_mod2(), GroundSubset::full(3));
    }

    #[test]
    fn point_labels() {
        assert_eq!(point_label(3, 0), "001");
        assert_eq!(point_label(3, 6), "111");
    }
}
