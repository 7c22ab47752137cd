use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use matroid_lab::binary_matroid::{check_witness, is_totally_unimodular, FanoKind, FanoMinor};
use matroid_lab::geodesy::{construct_regular_geodesic, counterexample_rank5, distance, search_geodesic, COUNTEREXAMPLE_RANK};
use matroid_lab::io::{f2_matrix_to_text, matrix_to_point_subset, parse_f2_matrix, parse_facets};
use matroid_lab::poset::{
    complement_complex_r3, enumerate_ir_f2, ir2z_ball, point_label, subset_matroid, survey_ir_f2, EnumerateOptions,
    Ir2zKind, Ir2zNode, MAX_IR_RANK,
};
use matroid_lab::symmetry::{
    action_character_on_points, conjugacy_classes, enumerate_group, h3_character, hopf_trace_character,
    sl3_character_table, ClassFunction, GlElement, TableValue,
};
use matroid_lab::topology::DEFAULT_TIETZE_BUDGET;
use matroid_lab::{BinaryMatroid, Error, F2Matrix, GroundSubset, IntMatrix};

use crate::report::{push_field, Outcome};

/// Transcripts enumerate every ordering of the moves, so they stop at this distance.
const MAX_TRANSCRIPT_DISTANCE: usize = 6;
/// Exhaustive total-unimodularity checks are skipped beyond this many entries.
const MAX_TU_CHECK_ENTRIES: usize = 160;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn labels(r: usize, s: GroundSubset) -> Vec<String> {
    s.iter().map(|p| point_label(r, p)).collect()
}

fn witness_json(w: &FanoMinor, names: &[String]) -> Value {
    let pick = |s: GroundSubset| s.iter().map(|i| names[i].clone()).collect::<Vec<_>>();
    json!({ "kind": w.kind, "delete": pick(w.delete), "contract": pick(w.contract) })
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn regular(path: &Path) -> Result<Outcome> {
    let text = read(path)?;
    let matrix = parse_f2_matrix(&text)?;
    let m = BinaryMatroid::from_matrix(&matrix);
    let names: Vec<String> = (0..m.len()).map(|j| j.to_string()).collect();
    let witness = m.find_fano_minor();
    let signing = m.tu_signing();
    let by_minors = witness.is_none();
    let by_signing = signing.is_some();

    let mut inputs = Vec::new();
    push_field(&mut inputs, b"regular");
    push_field(&mut inputs, f2_matrix_to_text(&matrix).as_bytes());
    let mut out = Outcome::new(
        inputs,
        json!({
            "rows": matrix.rows(),
            "columns": matrix.cols(),
            "rank": m.rank(),
            "regular": by_minors,
            "regular_by_signing": by_signing,
            "oracle_agreement": by_minors == by_signing,
            "witness_minor": witness.as_ref().map(|w| witness_json(w, &names)),
            "signing": signing.as_ref().map(|s| rows_of(&s.matrix)),
        }),
    );
    out.check("oracle_agreement", by_minors == by_signing);
    if let Some(w) = &witness {
        let kind = check_witness(&m, w);
        out.check("witness_realizes_fano_minor", kind == w.kind && kind != FanoKind::Neither);
    }
    if let Some(s) = &signing {
        let reduced: Vec<Vec<u8>> = rows_of(&s.matrix).iter().map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect()).collect();
        let reduced = F2Matrix::from_rows(&reduced);
        out.check("signing_represents_matroid", BinaryMatroid::from_matrix(&reduced).circuits() == m.circuits());
        if s.matrix.rows() * s.matrix.cols() <= MAX_TU_CHECK_ENTRIES {
            out.check("signing_totally_unimodular", is_totally_unimodular(&rows_of(&s.matrix)));
        }
    }
    out.summary = match &witness {
        None => format!("{}x{} matrix of rank {}: regular", matrix.rows(), matrix.cols(), m.rank()),
        Some(w) => format!(
            "{}x{} matrix of rank {}: not regular, {:?} minor deleting {:?} contracting {:?}",
            matrix.rows(),
            matrix.cols(),
            m.rank(),
            w.kind,
            w.delete.to_vec(),
            w.contract.to_vec()
        ),
    };
    Ok(out)
}

fn alternating_sum(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

pub fn homology_complex(path: &Path) -> Result<Outcome> {
    let text = read(path)?;
    let k = parse_facets(&text)?;
    let rep = k.homology_report();
    let mut inputs = Vec::new();
    push_field(&mut inputs, b"homology-complex");
    push_field(&mut inputs, matroid_lab::io::facets_to_text(&k).as_bytes());
    let mut out = Outcome::new(
        inputs,
        json!({ "source": "complex", "vertices": k.vertex_count(), "facets": k.facets().len(), "report": rep }),
    );
    out.check("boundary_squares_to_zero", k.chain_complex().is_complex());
    out.check("euler_is_alternating_betti_sum", alternating_sum(&rep.betti) == rep.euler);
    out.summary = format!("f-vector {:?}, betti {:?}, torsion {:?}", rep.f_vector, rep.betti, rep.torsion);
    Ok(out)
}

pub fn homology_ir(r: usize, seed: u64, face_budget: u128, dot: Option<&Path>) -> Result<Outcome> {
    let mut inputs = Vec::new();
    push_field(&mut inputs, b"homology-ir");
    push_field(&mut inputs, &(r as u64).to_le_bytes());
    if r > MAX_IR_RANK {
        bail!(Error::RankTooLarge { rank: r, max: MAX_IR_RANK });
    }
    if r == MAX_IR_RANK {
        return survey(r, seed, face_budget, inputs);
    }
    let poset = enumerate_ir_f2(r)?;
    if let Some(path) = dot {
        fs::write(path, poset.to_dot()).with_context(|| format!("writing {}", path.display()))?;
    }
    let k = poset.order_complex();
    let rep = k.homology_report();
    let mut out = Outcome::new(
        inputs,
        json!({
            "source": "ir_f2",
            "r": r,
            "nodes": poset.len(),
            "contains_full_set": poset.contains_full_set(),
            "report": rep,
        }),
    );
    let no_torsion = rep.torsion.iter().all(Vec::is_empty);
    match r {
        1 => {
            out.check("single_point", rep.betti == [1]);
        }
        2 => {
            out.check("contractible", rep.betti == [1, 0] && no_torsion);
            out.check("tree_on_four_vertices", rep.f_vector == [4, 3] && k.is_connected());
        }
        3 => {
            out.check("betti_1_0_0_8", rep.betti == [1, 0, 0, 8]);
            out.check("euler_minus_7", rep.euler == -7);
            out.check("no_torsion", no_torsion);
            out.check("matches_complement_complex", complement_complex_r3().homology().betti == rep.betti);
        }
        _ => {}
    }
    out.summary = format!("IR({r}, F2): {} nodes, f-vector {:?}, betti {:?}", poset.len(), rep.f_vector, rep.betti);
    Ok(out)
}

fn survey(r: usize, seed: u64, face_budget: u128, mut inputs: Vec<u8>) -> Result<Outcome> {
    push_field(&mut inputs, &seed.to_le_bytes());
    push_field(&mut inputs, &face_budget.to_le_bytes());
    let opts = EnumerateOptions { allow_rank4: true, seed, ..Default::default() };
    let s = survey_ir_f2(r, opts, face_budget, DEFAULT_TIETZE_BUDGET)?;
    let known = |b: Option<usize>| b.map_or(json!("INCONCLUSIVE"), |x| json!(x));
    let mut out = Outcome::new(
        inputs,
        json!({
            "source": "ir_f2_survey",
            "r": r,
            "nodes": s.nodes,
            "size_histogram": s.size_histogram,
            "contains_full_set": s.contains_full_set,
            "enumeration": s.stats,
            "chain_counts": s.chain_counts,
            "euler": s.euler,
            "faces_needed": s.faces_needed,
            "face_budget": s.face_budget,
            "b1": known(s.b1),
            "b2": known(s.b2),
            "pi1": s.pi1,
        }),
    );
    out.check("signing_agrees_with_minor_search", s.stats.spot_check_mismatches == 0);
    let _ = write!(
        out.summary,
        "IR({r}, F2): {} nodes, chain counts {:?}, euler {}, {} of {} subsets cross-checked",
        s.nodes, s.chain_counts, s.euler, s.stats.spot_checks, s.stats.subsets_scanned
    );
    if s.b2.is_none() {
        let _ = write!(out.summary, "; b2 and pi1 inconclusive ({} faces needed, budget {})", s.faces_needed, face_budget);
    }
    Ok(out)
}

fn class_function_json(f: &ClassFunction) -> Value {
    json!(f.values)
}

fn table_row_json(row: &[TableValue; 6]) -> Value {
    json!(row
        .iter()
        .map(|v| match v {
            TableValue::Int(x) => json!(x),
            TableValue::Z => json!("z"),
            TableValue::ZBar => json!("zbar"),
        })
        .collect::<Vec<_>>())
}

pub fn character(r: usize) -> Result<Outcome> {
    if r != 3 {
        bail!(Error::RankTooLarge { rank: r, max: 3 });
    }
    let group = enumerate_group(r)?;
    let classes = conjugacy_classes(&group);
    let p = complement_complex_r3();
    let points = action_character_on_points(&classes);
    let hopf = hopf_trace_character(&p, &classes, GlElement::point_permutation)?;
    let h3 = h3_character(&p, &classes, GlElement::point_permutation)?;
    let table = sl3_character_table();
    const CHI3: usize = 3;
    let row = table.find_row(&h3);
    let diff: Vec<Option<i64>> = table.rows[CHI3]
        .iter()
        .zip(&h3.values)
        .map(|(t, &v)| match t {
            TableValue::Int(x) => Some(v - x),
            _ => None,
        })
        .collect();
    let norm = h3.inner_product(&h3);
    let mut inputs = Vec::new();
    push_field(&mut inputs, b"character");
    push_field(&mut inputs, &(r as u64).to_le_bytes());
    let mut out = Outcome::new(
        inputs,
        json!({
            "group_order": group.len(),
            "classes": classes,
            "class_sizes": h3.sizes,
            "points_character": class_function_json(&points),
            "hopf_trace": class_function_json(&hopf),
            "h3_character": class_function_json(&h3),
            "h3_norm": norm.to_string(),
            "table_row": "chi_3",
            "table_values": table_row_json(&table.rows[CHI3]),
            "diff": diff,
            "match": row == Some(CHI3),
        }),
    );
    out.check("group_order_168", group.len() == 168);
    out.check("class_sizes", h3.sizes == [1, 21, 56, 42, 24, 24]);
    out.check("class_orders", classes.iter().map(|c| c.order).eq([1, 2, 3, 4, 7, 7]));
    out.check("hopf_trace", hopf.values == [-7, 1, 2, 1, 0, 0]);
    out.check("h3_matches_table_row", row == Some(CHI3));
    out.check("h3_irreducible", norm == 1.into());
    out.summary = format!(
        "classes {:?}, hopf trace {:?}, H3 character {:?}, norm {}",
        h3.labels, hopf.values, h3.values, norm
    );
    Ok(out)
}

fn read_subset(path: &Path) -> Result<(usize, GroundSubset, String)> {
    let text = read(path)?;
    let (r, s) = matrix_to_point_subset(&parse_f2_matrix(&text)?)?;
    Ok((r, s, text))
}

struct Blocker {
    subset: GroundSubset,
    reason: String,
    witness: Option<Value>,
}

fn describe_blocker(r: usize, s: GroundSubset, e1: GroundSubset, e2: GroundSubset) -> Blocker {
    let role = if s == e1.union(e2) {
        "union"
    } else if s == e1.intersection(e2) {
        "intersection"
    } else {
        "subset"
    };
    let m = subset_matroid(r, s);
    let rank = m.rank();
    if rank < r {
        return Blocker { subset: s, reason: format!("{role}_rank_{rank}"), witness: None };
    }
    let names = labels(r, s);
    let witness = m.find_fano_minor().map(|w| witness_json(&w, &names));
    Blocker { subset: s, reason: format!("{role}_not_regular"), witness }
}

fn blocker_json(r: usize, b: &Blocker) -> Value {
    json!({ "subset": labels(r, b.subset), "reason": b.reason, "witness_minor": b.witness })
}

/// Every ordering of the single-element moves from `e1` to `e2`, with the first step
/// that leaves the poset.
fn transcript(r: usize, e1: GroundSubset, e2: GroundSubset) -> Vec<Value> {
    let moves: Vec<(bool, usize)> =
        e1.difference(e2).iter().map(|p| (false, p)).chain(e2.difference(e1).iter().map(|p| (true, p))).collect();
    let mut member: HashMap<GroundSubset, bool> = HashMap::new();
    let mut entries = Vec::new();
    let mut order: Vec<usize> = (0..moves.len()).collect();
    loop {
        let mut cur = e1;
        let mut blocked = None;
        for (step, &k) in order.iter().enumerate() {
            let (add, p) = moves[k];
            cur = if add { cur.with(p) } else { cur.without(p) };
            if !*member.entry(cur).or_insert_with(|| matroid_lab::poset::is_ir_node(r, cur)) {
                blocked = Some((step, cur));
                break;
            }
        }
        let names: Vec<String> = order
            .iter()
            .map(|&k| format!("{}{}", if moves[k].0 { '+' } else { '-' }, point_label(r, moves[k].1)))
            .collect();
        entries.push(json!({
            "moves": names,
            "blocked_at": blocked.map(|(step, _)| step),
            "blocker": blocked.map(|(_, s)| describe_blocker(r, s, e1, e2).reason),
        }));
        if !next_permutation(&mut order) {
            break;
        }
    }
    entries
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn geodesic_result(r: usize, e1: GroundSubset, e2: GroundSubset, out: &mut Outcome) -> Result<Value> {
    let search = search_geodesic(r, e1, e2)?;
    let d = distance(e1, e2);
    let inter = e1.intersection(e2);
    let independent = subset_matroid(r, inter).rank() == inter.len();
    let mut blockers: Vec<Blocker> = search.blockers.iter().map(|&s| describe_blocker(r, s, e1, e2)).collect();
    blockers.sort_by_key(|b| (std::cmp::Reverse(b.subset.len()), b.subset.to_vec()));
    if let Some(p) = &search.path {
        out.check("path_is_regular", p.is_regular_path(r));
        out.check("path_is_shortest", p.len() == d);
    }
    let constructed = if independent {
        let p = construct_regular_geodesic(r, e1, e2)?;
        out.check("independent_intersection_has_geodesic", search.path.is_some());
        out.check("constructed_path_is_regular_geodesic", p.is_regular_path(r) && p.len() == d);
        Some(p)
    } else {
        None
    };
    let path_json = |p: &matroid_lab::geodesy::PosetPath| p.steps.iter().map(|&s| labels(r, s)).collect::<Vec<_>>();
    let transcript = if search.path.is_none() && d <= MAX_TRANSCRIPT_DISTANCE { Some(transcript(r, e1, e2)) } else { None };
    Ok(json!({
        "r": r,
        "e1": labels(r, e1),
        "e2": labels(r, e2),
        "distance": d,
        "intersection_independent": independent,
        "exists": search.path.is_some(),
        "path": search.path.as_ref().map(path_json),
        "length": search.path.as_ref().map(|p| p.len()),
        "constructed_path": constructed.as_ref().map(path_json),
        "reachable": search.reachable,
        "blockers": blockers.iter().map(|b| b.reason.clone()).collect::<Vec<_>>(),
        "blocker_details": blockers.iter().map(|b| blocker_json(r, b)).collect::<Vec<_>>(),
        "transcript": transcript,
    }))
}

pub fn geodesic(e1_path: &Path, e2_path: &Path) -> Result<Outcome> {
    let (r1, e1, t1) = read_subset(e1_path)?;
    let (r2, e2, t2) = read_subset(e2_path)?;
    if r1 != r2 {
        bail!(Error::DimensionMismatch { expected: r1, found: r2 });
    }
    let mut inputs = Vec::new();
    push_field(&mut inputs, b"geodesic");
    push_field(&mut inputs, t1.as_bytes());
    push_field(&mut inputs, t2.as_bytes());
    let mut out = Outcome::new(inputs, Value::Null);
    out.result = geodesic_result(r1, e1, e2, &mut out)?;
    out.summary = format!(
        "distance {}, geodesic {}",
        distance(e1, e2),
        if out.result["exists"] == true { "exists" } else { "does not exist" }
    );
    Ok(out)
}

pub fn counterexample() -> Result<Outcome> {
    let c = counterexample_rank5();
    let r = COUNTEREXAMPLE_RANK;
    let union = c.e1.union(c.e2);
    let inter = c.e1.intersection(c.e2);
    let mu = subset_matroid(r, union);
    let witness = mu.find_fano_minor();
    let mut inputs = Vec::new();
    push_field(&mut inputs, b"counterexample");
    let mut out = Outcome::new(inputs, Value::Null);
    out.check("e1_regular_rank_5", c.m1.rank() == r && c.m1.is_regular() && c.m1.is_regular_tu());
    out.check("e2_regular_rank_5", c.m2.rank() == r && c.m2.is_regular() && c.m2.is_regular_tu());
    out.check(
        "union_has_fano_minor",
        witness.as_ref().is_some_and(|w| check_witness(&mu, w) == w.kind && w.kind != FanoKind::Neither),
    );
    out.check("union_not_regular_by_signing", !mu.is_regular_tu());
    out.check("intersection_rank_4", subset_matroid(r, inter).rank() == r - 1);
    let mut result = geodesic_result(r, c.e1, c.e2, &mut out)?;
    out.check("no_geodesic", result["exists"] == false);
    out.check("blockers_union_and_intersection", result["blockers"] == json!(["union_not_regular", "intersection_rank_4"]));
    result["matrix"] = json!(f2_matrix_to_text(&c.matrix).lines().collect::<Vec<_>>());
    result["column_points"] = json!(c.columns.iter().map(|&p| point_label(r, p)).collect::<Vec<_>>());
    out.result = result;
    out.summary = format!(
        "rank-5 pair at distance {}: no regular geodesic; blockers {}",
        distance(c.e1, c.e2),
        out.result["blockers"]
    );
    Ok(out)
}

pub fn tree(depth: usize, dot: Option<&Path>) -> Result<Outcome> {
    let ball = ir2z_ball(&Ir2zNode::standard_basis(), depth)?;
    if let Some(path) = dot {
        fs::write(path, ball.to_dot()).with_context(|| format!("writing {}", path.display()))?;
    }
    let s = ball.summary();
    let mut hist: Vec<Value> = Vec::new();
    for d in &s.interior_degrees {
        hist.push(json!({ "kind": d.kind, "degree": d.degree, "count": d.count }));
    }
    let mut inputs = Vec::new();
    push_field(&mut inputs, b"tree");
    push_field(&mut inputs, &(depth as u64).to_le_bytes());
    let minima: Vec<&Ir2zNode> = s.morse_minima.iter().collect();
    let mut out = Outcome::new(
        inputs,
        json!({
            "depth": depth,
            "center": Ir2zNode::standard_basis(),
            "nodes": s.nodes,
            "edges": s.edges,
            "acyclic": s.acyclic,
            "degree_histogram": hist,
            "boundary_nodes": s.boundary_nodes,
            "mod2_images": s.mod2_images.iter().map(|&g| labels(2, g)).collect::<Vec<_>>(),
            "morse_minima": minima,
        }),
    );
    out.check("acyclic", s.acyclic);
    out.check(
        "interior_degrees_by_kind",
        s.interior_degrees.iter().all(|d| d.degree == if d.kind == Ir2zKind::BasisPair { 2 } else { 3 }),
    );
    if depth >= 2 {
        let ir2 = enumerate_ir_f2(2)?;
        out.check("mod2_surjects_onto_ir2", s.mod2_images == ir2.nodes);
    }
    if depth >= 1 {
        let right = [
            Ir2zNode::triangle([1, 0], [0, 1], [1, 1])?,
            Ir2zNode::triangle([1, 0], [0, 1], [1, -1])?,
        ];
        let mut found = s.morse_minima.clone();
        found.sort();
        let mut want = right.to_vec();
        want.sort();
        out.check("two_right_triangle_minima", found == want);
    }
    out.summary = format!("depth {depth}: {} nodes, {} edges, acyclic {}", s.nodes, s.edges, s.acyclic);
    Ok(out)
}

/// Stable name for a library error, for reports and exit diagnostics.
pub fn error_code(e: &anyhow::Error) -> &'static str {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) => "PARSE_ERROR",
        Some(Error::RankTooLarge { .. }) => "RANK_TOO_LARGE",
        Some(Error::NotInPoset) => "NOT_IN_POSET",
        Some(Error::DepthTooLarge { .. }) => "DEPTH_TOO_LARGE",
        Some(Error::DimensionMismatch { .. }) => "DIMENSION_MISMATCH",
        Some(Error::BettiMismatch { .. }) => "BETTI_MISMATCH",
        Some(Error::NotPure) => "NOT_PURE",
        Some(_) => "ERROR",
        None if e.downcast_ref::<std::io::Error>().is_some() => "IO_ERROR",
        None => "ERROR",
    }
}
