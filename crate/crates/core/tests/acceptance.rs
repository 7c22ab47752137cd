//! Acceptance gate: one line per criterion, nonzero exit if any fails.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use matroid_lab::binary_matroid::{check_witness, FanoKind};
use matroid_lab::geodesy::{construct_regular_geodesic, counterexample_rank5, distance, geodesic_exists};
use matroid_lab::graphs::{graphic_matroid, Graph};
use matroid_lab::poset::{
    complement_complex_r3, enumerate_ir_f2, ir2z_ball, is_ir_node, point_word, subset_matroid, Ir2zKind, Ir2zNode,
};
use matroid_lab::symmetry::{
    conjugacy_classes, enumerate_group, h3_character, hopf_trace_character, sl3_character_table, GlElement,
};
use matroid_lab::topology::{find_shelling, pi1_trivial, verify_shelling, Pi1Status, SimplicialComplex, DEFAULT_TIETZE_BUDGET};
use matroid_lab::{BinaryMatroid, GroundSubset};

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn expect(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Stops at the first failing condition so the line names it.
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return fail(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------- oracles

/// Rank over GF(2) of bit-packed vectors.
fn gf2_rank(vs: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vs {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

fn points(s: GroundSubset) -> impl Iterator<Item = u64> {
    s.iter().map(point_word)
}

/// Rank of an integer matrix reduced mod a prime.
fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    for row in &mut m {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let inv = |a: i64| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let f = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * f % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let g = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - g * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn boundary_rows(k: &SimplicialComplex, d: usize) -> Vec<Vec<i64>> {
    let faces = k.faces();
    let lower: HashMap<&Vec<usize>, usize> = faces[d - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = vec![vec![0i64; faces[d].len()]; faces[d - 1].len()];
    for (j, s) in faces[d].iter().enumerate() {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            m[lower[&f]][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Betti numbers over GF(p).
fn betti_mod_p(k: &SimplicialComplex, p: i64) -> Vec<usize> {
    let f = k.f_vector();
    let ranks: Vec<usize> = (0..=f.len()).map(|d| if d == 0 || d >= f.len() { 0 } else { rank_mod_p(boundary_rows(k, d), p) }).collect();
    (0..f.len()).map(|d| f[d] - ranks[d] - ranks[d + 1]).collect()
}

/// Each facet meets the union of earlier ones in a nonempty pure complex of codimension one.
fn is_shelling_order(facets: &[Vec<usize>]) -> bool {
    for (i, f) in facets.iter().enumerate().skip(1) {
        let meets: Vec<BTreeSet<usize>> = facets[..i]
            .iter()
            .map(|g| f.iter().copied().filter(|v| g.contains(v)).collect::<BTreeSet<_>>())
            .collect();
        let maximal: Vec<&BTreeSet<usize>> =
            meets.iter().filter(|a| !meets.iter().any(|b| a.len() < b.len() && a.is_subset(b))).collect();
        if maximal.is_empty() || maximal.iter().any(|m| m.len() + 1 != f.len()) {
            return false;
        }
    }
    true
}

/// Lefschetz number of a vertex permutation: Euler characteristic of the fixed
/// subcomplex of the barycentric subdivision (chains of invariant faces).
fn lefschetz_by_fixed_chains(k: &SimplicialComplex, perm: &[usize]) -> i64 {
    let invariant: Vec<Vec<usize>> = k
        .faces()
        .into_iter()
        .flatten()
        .filter(|f| {
            let mut img: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            img.sort_unstable();
            img == *f
        })
        .collect();
    // chains ending at each face, counted with sign (-1)^(length - 1)
    let mut by_size: Vec<&Vec<usize>> = invariant.iter().collect();
    by_size.sort_by_key(|f| f.len());
    let mut signed: Vec<i64> = Vec::with_capacity(by_size.len());
    for (i, f) in by_size.iter().enumerate() {
        let mut s = 1i64;
        for j in 0..i {
            let g = by_size[j];
            if g.len() < f.len() && g.iter().all(|v| f.contains(v)) {
                s -= signed[j];
            }
        }
        signed.push(s);
    }
    signed.iter().sum()
}

fn random_binary_matroid(rng: &mut ChaCha8Rng) -> BinaryMatroid {
    let r = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=10);
    let cols: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << r)).collect();
    BinaryMatroid::from_vectors(r, &cols)
}

fn random_connected_graph(rng: &mut ChaCha8Rng) -> Graph {
    let v = rng.gen_range(1..=6);
    let mut edges: Vec<(usize, usize)> = (1..v).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..rng.gen_range(0..=6) {
        let a = rng.gen_range(0..v);
        let b = rng.gen_range(0..v);
        if a != b {
            edges.push((a, b));
        }
    }
    edges.shuffle(rng);
    Graph::new(v, edges).unwrap()
}

// ---------------------------------------------------------------- criteria

fn c1_euler() -> Outcome {
    let p = complement_complex_r3();
    // faces are the nonempty point sets whose complement spans F_2^3
    let mut oracle = vec![0usize; 7];
    for mask in 1u64..128 {
        let s = GroundSubset::from_mask(mask);
        let rest = GroundSubset::full(7).difference(s);
        if gf2_rank(points(rest)) == 3 {
            oracle[s.len() - 1] += 1;
        }
    }
    while oracle.last() == Some(&0) {
        oracle.pop();
    }
    let f = p.f_vector();
    ensure!(f == [7, 21, 35, 28], "f-vector {f:?}");
    ensure!(f == oracle, "f-vector {f:?} but complement count gives {oracle:?}");
    expect(p.euler_characteristic() == -7, format!("chi = {}, f = {f:?}", p.euler_characteristic()))
}

fn c2_homology() -> Outcome {
    let p = complement_complex_r3();
    let d3 = p.chain_complex().boundary(3);
    ensure!((d3.rows(), d3.cols()) == (35, 28), "boundary_3 is {}x{}", d3.rows(), d3.cols());
    let h = p.homology();
    ensure!(h.betti == [1, 0, 0, 8], "betti {:?}", h.betti);
    ensure!(h.torsion.iter().all(Vec::is_empty), "torsion {:?}", h.torsion);
    for q in [2, 3, 5] {
        let b = betti_mod_p(&p, q);
        ensure!(b == h.betti, "betti over GF({q}) {b:?}");
    }
    pass("betti (1,0,0,8), no torsion; GF(2), GF(3), GF(5) ranks agree")
}

fn c3_order_complex() -> Outcome {
    let poset = enumerate_ir_f2(3).unwrap();
    // the only non-regular spanning subset of F_2^3 - 0 is the whole Fano plane
    let oracle = (1u64..127).filter(|&m| gf2_rank(points(GroundSubset::from_mask(m))) == 3).count();
    ensure!(poset.len() == 91 && oracle == 91, "{} nodes, {oracle} by spanning count", poset.len());
    let k = poset.order_complex();
    let b = k.homology().betti;
    let bp = complement_complex_r3().homology().betti;
    expect(b == bp && b == [1, 0, 0, 8], format!("order complex f = {:?}, betti {b:?}", k.f_vector()))
}

fn c4_shelling() -> Outcome {
    let p = complement_complex_r3();
    let Some(order) = find_shelling(&p).unwrap() else { return fail("no shelling found") };
    ensure!(verify_shelling(&p, &order).unwrap(), "verify_shelling rejects the order");
    let facets: Vec<Vec<usize>> = order.iter().map(|&i| p.facets()[i].clone()).collect();
    expect(is_shelling_order(&facets), format!("{} facets shelled, independent check agrees", facets.len()))
}

fn c5_pi1() -> Outcome {
    let p = pi1_trivial(&complement_complex_r3(), DEFAULT_TIETZE_BUDGET).unwrap();
    let ir2 = pi1_trivial(&enumerate_ir_f2(2).unwrap().order_complex(), DEFAULT_TIETZE_BUDGET).unwrap();
    let hollow = pi1_trivial(&SimplicialComplex::simplex_boundary(2), DEFAULT_TIETZE_BUDGET).unwrap();
    expect(
        p == Pi1Status::Trivial && ir2 == Pi1Status::Trivial && hollow == Pi1Status::NontrivialH1,
        format!("P {p:?}, IR(2) {ir2:?}, hollow triangle {hollow:?}"),
    )
}

fn c6_group() -> Outcome {
    let g = enumerate_group(3).unwrap();
    // invertible 3x3 matrices over GF(2) by brute force
    let oracle = (0u32..512).filter(|&m| gf2_rank((0..3).map(|i| (m >> (3 * i) & 7) as u64)) == 3).count();
    ensure!(g.len() == 168 && oracle == 168, "{} elements, {oracle} by brute force", g.len());
    let cl = conjugacy_classes(&g);
    let sizes: Vec<usize> = cl.iter().map(|c| c.size).collect();
    let orders: Vec<usize> = cl.iter().map(|c| c.order).collect();
    expect(
        sizes == [1, 21, 56, 42, 24, 24] && orders == [1, 2, 3, 4, 7, 7],
        format!("sizes {sizes:?}, orders {orders:?}"),
    )
}

fn c7_character() -> Outcome {
    let g = enumerate_group(3).unwrap();
    let cl = conjugacy_classes(&g);
    let p = complement_complex_r3();
    let hopf = hopf_trace_character(&p, &cl, GlElement::point_permutation).unwrap();
    ensure!(hopf.values == [-7, 1, 2, 1, 0, 0], "hopf trace {:?}", hopf.values);
    let oracle: Vec<i64> = cl.iter().map(|c| lefschetz_by_fixed_chains(&p, &c.representative.point_permutation())).collect();
    ensure!(oracle == hopf.values, "fixed-chain Lefschetz numbers {oracle:?}");
    let h3 = h3_character(&p, &cl, GlElement::point_permutation).unwrap();
    ensure!(h3.values == [8, 0, -1, 0, 1, 1], "H3 character {:?}", h3.values);
    let norm: i64 = h3.values.iter().zip(&h3.sizes).map(|(&v, &s)| v * v * s as i64).sum();
    ensure!(norm == 168, "sum of |class| * chi^2 = {norm}");
    expect(sl3_character_table().find_row(&h3) == Some(3), "hopf (-7,1,2,1,0,0), H3 (8,0,-1,0,1,1), norm 1")
}

fn c8_counterexample() -> Outcome {
    let c = counterexample_rank5();
    let union = c.e1.union(c.e2);
    let inter = c.e1.intersection(c.e2);
    for (name, m, s) in [("e1", &c.m1, c.e1), ("e2", &c.m2, c.e2)] {
        ensure!(gf2_rank(points(s)) == 5 && m.rank() == 5, "{name} rank {}", m.rank());
        ensure!(m.is_regular() && m.is_regular_tu(), "{name} not regular");
    }
    let mu = subset_matroid(5, union);
    let Some(w) = mu.find_fano_minor() else { return fail("union has no Fano minor") };
    ensure!(check_witness(&mu, &w) == w.kind && w.kind != FanoKind::Neither, "witness does not realize {:?}", w.kind);
    let minor = mu.minor(w.delete, w.contract).unwrap();
    // F7 is seven distinct nonzero vectors of rank 3; F7* is its dual
    let as_plane = |m: &BinaryMatroid| m.len() == 7 && m.rank() == 3 && m.circuits().iter().filter(|c| c.len() == 3).count() == 7;
    ensure!(as_plane(&minor) || as_plane(&minor.dual()), "minor is not F7 or F7*");
    ensure!(!mu.is_regular_tu(), "union signable");
    ensure!(gf2_rank(points(inter)) == 4, "intersection rank {}", gf2_rank(points(inter)));
    ensure!(!geodesic_exists(5, c.e1, c.e2).unwrap(), "geodesic found");
    pass(format!("{:?} minor deleting {:?} contracting {:?}; no geodesic", w.kind, w.delete.to_vec(), w.contract.to_vec()))
}

fn c9_properties() -> Outcome {
    const CASES: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // (a) circuits and cocircuits meet evenly
    for case in 0..CASES {
        let m = random_binary_matroid(&mut rng);
        for c in m.circuits() {
            for d in m.cocircuits() {
                ensure!(c.intersection(*d).len() % 2 == 0, "(a) case {case}: circuit {c:?} cocircuit {d:?}");
            }
        }
    }
    // (b) duality is an involution
    for case in 0..CASES {
        let m = random_binary_matroid(&mut rng);
        let dd = m.dual().dual();
        ensure!(dd.len() == m.len() && dd.circuits() == m.circuits(), "(b) case {case}");
    }
    // (c) both regularity oracles agree
    for mask in 0u64..128 {
        let m = subset_matroid(3, GroundSubset::from_mask(mask));
        ensure!(m.is_regular() == m.is_regular_tu(), "(c) rank 3 subset {mask:#b}");
    }
    for _ in 0..500 {
        let m = subset_matroid(4, GroundSubset::from_mask(rng.gen_range(0..1u64 << 15)));
        ensure!(m.is_regular() == m.is_regular_tu(), "(c) rank 4 subset");
    }
    // (d) explicit geodesics for independent intersections
    let ir3 = enumerate_ir_f2(3).unwrap();
    let mut done = 0;
    while done < CASES {
        let (&e1, &e2) = (ir3.nodes.choose(&mut rng).unwrap(), ir3.nodes.choose(&mut rng).unwrap());
        let x = e1.intersection(e2);
        if gf2_rank(points(x)) != x.len() {
            continue;
        }
        let p = construct_regular_geodesic(3, e1, e2).unwrap();
        ensure!(p.steps.first() == Some(&e1) && p.steps.last() == Some(&e2), "(d) endpoints");
        ensure!(p.len() == distance(e1, e2), "(d) length {} vs distance {}", p.len(), distance(e1, e2));
        ensure!(p.steps.windows(2).all(|w| distance(w[0], w[1]) == 1), "(d) step size");
        ensure!(p.steps.iter().all(|s| ir3.contains(*s)), "(d) node outside IR(3)");
        done += 1;
    }
    // (e) graphic matroids
    for case in 0..CASES {
        let g = random_connected_graph(&mut rng);
        let m = graphic_matroid(&g).unwrap();
        let h = m.h1_z();
        ensure!(m.is_regular_om(), "(e) case {case}: not regular");
        ensure!(h.free_rank + 1 == g.vertex_count() && h.torsion.is_empty(), "(e) case {case}: H1 {h:?}");
    }
    pass("(a)-(e) 100 seeded cases each; (c) all 128 rank-3 subsets and 500 rank-4 samples")
}

fn c10_tree() -> Outcome {
    let ball = ir2z_ball(&Ir2zNode::standard_basis(), 8).unwrap();
    let s = ball.summary();
    // union-find: no edge closes a cycle
    let mut parent: Vec<usize> = (0..ball.nodes.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &ball.edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        ensure!(ra != rb, "edge ({a},{b}) closes a cycle");
        parent[ra] = rb;
    }
    ensure!(s.acyclic && ball.edges.len() + 1 == ball.nodes.len(), "not a tree");
    for d in &s.interior_degrees {
        let want = if d.kind == Ir2zKind::BasisPair { 2 } else { 3 };
        ensure!(d.degree == want, "{:?} of degree {}", d.kind, d.degree);
    }
    let ir2 = enumerate_ir_f2(2).unwrap();
    ensure!(s.mod2_images == ir2.nodes, "mod-2 images {:?}", s.mod2_images);
    let mut minima = s.morse_minima.clone();
    minima.sort();
    let mut want = vec![
        Ir2zNode::triangle([1, 0], [0, 1], [1, 1]).unwrap(),
        Ir2zNode::triangle([1, 0], [0, 1], [1, -1]).unwrap(),
    ];
    want.sort();
    ensure!(minima == want, "minima {minima:?}");
    ensure!(minima.iter().all(Ir2zNode::is_right_triangle), "a minimum is not right");
    pass(format!("{} nodes, {} edges, two right-triangle minima", s.nodes, s.edges))
}

fn c11_ir2() -> Outcome {
    let p = enumerate_ir_f2(2).unwrap();
    ensure!(p.len() == 4, "{} nodes", p.len());
    ensure!(p.nodes.iter().all(|&s| is_ir_node(2, s)), "non-node listed");
    let k = p.order_complex();
    let f = k.f_vector();
    expect(
        f == [4, 3] && k.is_connected() && k.homology().betti == [1, 0],
        format!("order complex f = {f:?}, a tree on 4 vertices"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 euler characteristic of P", c1_euler, Duration::from_secs(1)),
        ("2 integral homology of P", c2_homology, Duration::from_secs(10)),
        ("3 order complex of IR(3,F2)", c3_order_complex, Duration::from_secs(300)),
        ("4 shelling of P", c4_shelling, Duration::from_secs(60)),
        ("5 fundamental groups", c5_pi1, Duration::MAX),
        ("6 SL(3,F2) classes", c6_group, Duration::MAX),
        ("7 Hopf trace and H3 character", c7_character, Duration::MAX),
        ("8 rank-5 counterexample", c8_counterexample, Duration::from_secs(60)),
        ("9 property suite", c9_properties, Duration::MAX),
        ("10 IR(2,Z) ball of depth 8", c10_tree, Duration::from_secs(10)),
        ("11 IR(2,F2) enumeration", c11_ir2, Duration::MAX),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = out.ok && in_time;
        failures += !ok as usize;
        let budget = if limit == Duration::MAX { String::new() } else { format!(" (limit {:.0?})", limit) };
        let late = if in_time { "" } else { " TOO SLOW" };
        println!("[{}] {name}: {} [{:.3?}{budget}{late}]", if ok { "PASS" } else { "FAIL" }, out.detail, elapsed);
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
