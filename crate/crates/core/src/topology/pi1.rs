use std::collections::VecDeque;

use serde::Serialize;

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};

pub const DEFAULT_TIETZE_BUDGET: u64 = 10_000;

/// Total relator length beyond which simplification gives up.
const LENGTH_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Pi1Status {
    /// The presentation simplified to the trivial group.
    Trivial,
    /// Simplification stalled or ran out of budget; the abelianization vanishes.
    Inconclusive,
    /// The abelianization is nonzero, so the group is not trivial.
    NontrivialH1,
}

/// Letters are `±(g + 1)` for generator `g`.
type Word = Vec<i32>;

fn reduce_cyclic(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == -out[end - 1] {
        start += 1;
        end -= 1;
    }
    *w = out[start..end].to_vec();
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// Edge-path presentation: generators are the edges outside a spanning tree of
/// the 1-skeleton, one relator per triangle. Tietze moves eliminate a generator
/// occurring exactly once in some relator (shortest relators first). `budget`
/// bounds the number of eliminations.
pub fn pi1_trivial(k: &SimplicialComplex, budget: u64) -> Result<Pi1Status> {
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    let faces = k.faces();
    let empty = Vec::new();
    let edges = faces.get(1).unwrap_or(&empty);
    let triangles = faces.get(2).unwrap_or(&empty);
    let n = k.vertex_count();

    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        adj[e[0]].push((e[1], i));
        adj[e[1]].push((e[0], i));
    }
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; n];
    if let Some(&root) = k.used_vertices().first() {
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut gen_of = vec![None; edges.len()];
    let mut gens = 0usize;
    for (i, &t) in in_tree.iter().enumerate() {
        if !t {
            gen_of[i] = Some(gens);
            gens += 1;
        }
    }
    let edge_index = |a: usize, b: usize| edges.binary_search(&vec![a, b]).expect("edge of a triangle");
    let letter = |a: usize, b: usize| gen_of[edge_index(a, b)].map(|g| g as i32 + 1);
    let mut relators: Vec<Word> = Vec::new();
    for t in triangles {
        let (a, b, c) = (t[0], t[1], t[2]);
        let mut w: Word = Vec::new();
        w.extend(letter(a, b));
        w.extend(letter(b, c));
        w.extend(letter(a, c).map(|x| -x));
        reduce_cyclic(&mut w);
        if !w.is_empty() {
            relators.push(w);
        }
    }

    // abelianization: exponent sums
    if gens > 0 {
        let mut m = IntMatrix::zeros(relators.len().max(1), gens);
        for (i, r) in relators.iter().enumerate() {
            for &x in r {
                let g = x.unsigned_abs() as usize - 1;
                m.set(i, g, m.get(i, g) + x.signum() as i64);
            }
        }
        let snf = smith_normal_form(&m);
        if snf.rank < gens || !snf.torsion_u64().is_empty() {
            return Ok(Pi1Status::NontrivialH1);
        }
    }

    let mut alive = gens;
    let mut steps = 0u64;
    loop {
        relators.retain(|r| !r.is_empty());
        if alive == 0 {
            return Ok(Pi1Status::Trivial);
        }
        if steps >= budget {
            return Ok(Pi1Status::Inconclusive);
        }
        relators.sort_by_key(Vec::len);
        let mut pick = None;
        'outer: for (ri, r) in relators.iter().enumerate() {
            for (pos, &x) in r.iter().enumerate() {
                if r.iter().filter(|&&y| y == x || y == -x).count() == 1 {
                    pick = Some((ri, pos));
                    break 'outer;
                }
            }
        }
        let (ri, pos) = match pick {
            Some(p) => p,
            None => return Ok(Pi1Status::Inconclusive),
        };
        let r = relators.swap_remove(ri);
        let x = r[pos];
        // rotate so that x leads: x·w = 1, hence x = w⁻¹
        let w: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let image = if x > 0 { inverse(&w) } else { w };
        let g = x.abs();
        let image_inv = inverse(&image);
        let mut total = 0usize;
        for rel in relators.iter_mut() {
            if rel.iter().any(|y| y.abs() == g) {
                let mut out = Vec::with_capacity(rel.len());
                for &y in rel.iter() {
                    if y == g {
                        out.extend_from_slice(&image);
                    } else if y == -g {
                        out.extend_from_slice(&image_inv);
                    } else {
                        out.push(y);
                    }
                }
                reduce_cyclic(&mut out);
                *rel = out;
            }
            total += rel.len();
        }
        if total > LENGTH_CAP {
            return Ok(Pi1Status::Inconclusive);
        }
        alive -= 1;
        steps += 1;
    }
}
