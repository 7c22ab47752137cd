use std::collections::BTreeSet;

use super::{is_subset_sorted, SimplicialComplex};
use crate::error::{Error, Result};

pub const DEFAULT_SHELLING_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellingOutcome {
    /// Facet indices (into [`SimplicialComplex::facets`]) in shelling order.
    Found(Vec<usize>),
    /// The search space was exhausted.
    None,
    /// The state budget ran out first.
    BudgetExhausted,
}

/// Shelling search with the default state budget; `Ok(None)` if none was found or
/// the budget ran out.
pub fn find_shelling(k: &SimplicialComplex) -> Result<Option<Vec<usize>>> {
    Ok(match find_shelling_with_budget(k, DEFAULT_SHELLING_BUDGET)? {
        ShellingOutcome::Found(order) => Some(order),
        _ => None,
    })
}

/// Depth-first search over facet orders, trying facets lexicographically. A facet
/// may be appended when its intersection with the earlier facets is a nonempty
/// union of its own codimension-one faces; every such union is itself shellable.
pub fn find_shelling_with_budget(k: &SimplicialComplex, budget: u64) -> Result<ShellingOutcome> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = k.facets();
    let n = facets.len();
    if n == 0 {
        return Ok(ShellingOutcome::Found(Vec::new()));
    }
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut states = 0u64;
    fn search(
        facets: &[Vec<usize>],
        order: &mut Vec<usize>,
        used: &mut [bool],
        states: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if order.len() == facets.len() {
            return Some(true);
        }
        for cand in 0..facets.len() {
            if used[cand] || !(order.is_empty() || attaches_along_ridges(facets, order, cand)) {
                continue;
            }
            *states += 1;
            if *states > budget {
                return None;
            }
            used[cand] = true;
            order.push(cand);
            if search(facets, order, used, states, budget)? {
                return Some(true);
            }
            order.pop();
            used[cand] = false;
        }
        Some(false)
    }
    Ok(match search(facets, &mut order, &mut used, &mut states, budget) {
        Some(true) => ShellingOutcome::Found(order),
        Some(false) => ShellingOutcome::None,
        None => ShellingOutcome::BudgetExhausted,
    })
}

/// With `s = facets[cand]`: the vertices `v` such that `s - v` lies in an earlier
/// facet must hit `s - t` for every earlier facet `t`.
fn attaches_along_ridges(facets: &[Vec<usize>], order: &[usize], cand: usize) -> bool {
    let s = &facets[cand];
    let mut free = Vec::new();
    for (i, &v) in s.iter().enumerate() {
        let ridge: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        if order.iter().any(|&t| is_subset_sorted(&ridge, &facets[t])) {
            free.push(v);
        }
    }
    if free.is_empty() {
        return false;
    }
    order.iter().all(|&t| free.iter().any(|v| facets[t].binary_search(v).is_err()))
}

/// Checks the shelling condition at every step by enumerating faces explicitly:
/// the faces of each new facet already present must form a nonempty complex
/// whose maximal faces all have codimension one.
pub fn verify_shelling(k: &SimplicialComplex, order: &[usize]) -> Result<bool> {
    let facets = k.facets();
    let mut seen = vec![false; facets.len()];
    if order.len() != facets.len() {
        return Err(Error::BadPermutation);
    }
    for &i in order {
        if i >= facets.len() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::BadPermutation);
        }
    }
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let mut present: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (step, &i) in order.iter().enumerate() {
        let s = &facets[i];
        let faces = all_faces(s);
        if step > 0 {
            let shared: Vec<&Vec<usize>> = faces.iter().filter(|f| present.contains(*f)).collect();
            let maximal: Vec<&&Vec<usize>> = shared
                .iter()
                .filter(|f| !shared.iter().any(|g| g.len() > f.len() && is_subset_sorted(f, g)))
                .collect();
            if maximal.is_empty() || maximal.iter().any(|f| f.len() + 1 != s.len()) {
                return Ok(false);
            }
        }
        present.extend(faces);
    }
    Ok(true)
}

/// All faces of a simplex including the empty face.
fn all_faces(s: &[usize]) -> Vec<Vec<usize>> {
    (0u64..1 << s.len())
        .map(|mask| (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect())
        .collect()
}
