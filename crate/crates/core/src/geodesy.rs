//! Shortest paths in `IR(r, F_2)` for the distance `|E1 - E2| + |E2 - E1|`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::binary_matroid::{BinaryMatroid, GroundSubset};
use crate::error::{Error, Result};
use crate::linalg::F2Matrix;
use crate::poset::{is_ir_node, point_count, point_index, subset_matroid};

/// Consecutive steps differ by one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PosetPath {
    pub steps: Vec<GroundSubset>,
}

impl PosetPath {
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether every step is a node of `IR(r, F_2)` and consecutive steps are at distance one.
    pub fn is_regular_path(&self, r: usize) -> bool {
        self.steps.windows(2).all(|w| distance(w[0], w[1]) == 1) && self.steps.iter().all(|&s| is_ir_node(r, s))
    }
}

pub fn distance(a: GroundSubset, b: GroundSubset) -> usize {
    a.symmetric_difference(b).len()
}

fn check_node(r: usize, s: GroundSubset) -> Result<()> {
    if s.iter().any(|i| i >= point_count(r)) || !is_ir_node(r, s) {
        return Err(Error::NotInPoset);
    }
    Ok(())
}

/// Greedy lexicographic extension of an independent set `x` to a basis inside `e`.
fn extend_to_basis(r: usize, x: GroundSubset, e: GroundSubset) -> GroundSubset {
    let mut b = x;
    for i in e.difference(x).iter() {
        if subset_matroid(r, b.with(i)).rank() == b.len() + 1 {
            b = b.with(i);
        }
    }
    b
}

/// A geodesic from `e1` to `e2` when their intersection is independent: shrink `e1`
/// to a basis, exchange basis elements one at a time, then grow to `e2`.
pub fn construct_regular_geodesic(r: usize, e1: GroundSubset, e2: GroundSubset) -> Result<PosetPath> {
    check_node(r, e1)?;
    check_node(r, e2)?;
    let x = e1.intersection(e2);
    if subset_matroid(r, x).rank() != x.len() {
        return Err(Error::IntersectionDependent);
    }
    let b1 = extend_to_basis(r, x, e1);
    let b2 = extend_to_basis(r, x, e2);
    let mut cur = e1;
    let mut steps = vec![cur];
    for i in e1.difference(b1).iter() {
        cur = cur.without(i);
        steps.push(cur);
    }
    for add in b2.difference(b1).iter() {
        cur = cur.with(add);
        steps.push(cur);
        // the unique circuit of cur meets b1 - b2; drop its smallest such element
        let drop = cur
            .intersection(b1.difference(b2))
            .iter()
            .find(|&f| subset_matroid(r, cur.without(f)).rank() == r)
            .expect("basis exchange");
        cur = cur.without(drop);
        steps.push(cur);
    }
    for i in e2.difference(b2).iter() {
        cur = cur.with(i);
        steps.push(cur);
    }
    debug_assert_eq!(cur, e2);
    Ok(PosetPath { steps })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeodesicSearch {
    pub path: Option<PosetPath>,
    /// Poset nodes reachable from `e1` by monotone steps.
    pub reachable: usize,
    /// When no geodesic exists: the subsets one monotone step beyond the
    /// reachable nodes, none of which lies in the poset.
    pub blockers: Vec<GroundSubset>,
}

/// Breadth-first search over monotone interleavings (delete from `e1 - e2`, add from
/// `e2 - e1`), keeping every intermediate inside `IR(r, F_2)`.
pub fn search_geodesic(r: usize, e1: GroundSubset, e2: GroundSubset) -> Result<GeodesicSearch> {
    check_node(r, e1)?;
    check_node(r, e2)?;
    let removable = e1.difference(e2);
    let addable = e2.difference(e1);
    let mut parent: HashMap<GroundSubset, GroundSubset> = HashMap::new();
    let mut member: HashMap<GroundSubset, bool> = HashMap::new();
    let mut queue = VecDeque::from([e1]);
    parent.insert(e1, e1);
    while let Some(s) = queue.pop_front() {
        if s == e2 {
            break;
        }
        let nexts = removable.intersection(s).iter().map(|i| s.without(i)).chain(addable.difference(s).iter().map(|i| s.with(i)));
        for t in nexts {
            if parent.contains_key(&t) {
                continue;
            }
            let ok = *member.entry(t).or_insert_with(|| is_ir_node(r, t));
            if ok {
                parent.insert(t, s);
                queue.push_back(t);
            }
        }
    }
    let reachable = parent.len();
    if parent.contains_key(&e2) {
        let mut steps = vec![e2];
        let mut cur = e2;
        while cur != e1 {
            cur = parent[&cur];
            steps.push(cur);
        }
        steps.reverse();
        return Ok(GeodesicSearch { path: Some(PosetPath { steps }), reachable, blockers: Vec::new() });
    }
    let mut blockers: Vec<GroundSubset> = member.into_iter().filter(|&(_, ok)| !ok).map(|(s, _)| s).collect();
    blockers.sort_by_key(|s| (s.len(), s.to_vec()));
    Ok(GeodesicSearch { path: None, reachable, blockers })
}

pub fn geodesic_exists(r: usize, e1: GroundSubset, e2: GroundSubset) -> Result<bool> {
    Ok(search_geodesic(r, e1, e2)?.path.is_some())
}

/// The rank-5 pair without a regular geodesic.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub matrix: F2Matrix,
    /// Points of `F_2^5 - 0` for each column of `matrix`.
    pub columns: Vec<usize>,
    pub e1: GroundSubset,
    pub e2: GroundSubset,
    pub m1: BinaryMatroid,
    pub m2: BinaryMatroid,
}

pub const COUNTEREXAMPLE_RANK: usize = 5;

/// Deleting the first, respectively second, column of a non-regular rank-5 matroid on
/// nine elements. Checks its defining properties and panics if any fails.
pub fn counterexample_rank5() -> Counterexample {
    let matrix = F2Matrix::from_rows(&[
        [1u8, 0, 0, 0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 1, 1, 0, 1],
        [0, 0, 0, 1, 0, 1, 0, 1, 1],
        [0, 0, 0, 0, 1, 0, 1, 1, 1],
    ]);
    let r = COUNTEREXAMPLE_RANK;
    // first row is the most significant coordinate
    let columns: Vec<usize> = (0..9)
        .map(|j| point_index((0..r).fold(0u64, |w, i| w << 1 | matrix.get(i, j) as u64)))
        .collect();
    let all = GroundSubset::from_indices(columns.iter().copied());
    let e1 = all.without(columns[0]);
    let e2 = all.without(columns[1]);
    let m1 = subset_matroid(r, e1);
    let m2 = subset_matroid(r, e2);
    assert!(m1.rank() == r && m1.is_regular(), "first deletion must be regular of rank 5");
    assert!(m2.rank() == r && m2.is_regular(), "second deletion must be regular of rank 5");
    assert!(subset_matroid(r, e1.union(e2)).find_fano_minor().is_some(), "union must have a Fano minor");
    assert_eq!(subset_matroid(r, e1.intersection(e2)).rank(), r - 1, "intersection must have rank 4");
    Counterexample { matrix, columns, e1, e2, m1, m2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::enumerate_ir_f2;
    use rand::{seq::SliceRandom, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distances() {
        let a = GroundSubset::from_indices([0, 1, 2]);
        assert_eq!(distance(a, a), 0);
        // two disjoint bases of F_2^3: {001,010,100} and {011,101,111}
        let b1 = GroundSubset::from_indices([0, 1, 3]);
        let b2 = GroundSubset::from_indices([2, 4, 6]);
        assert_eq!(distance(b1, b2), 6);
        let c = counterexample_rank5();
        assert_eq!(distance(c.e1, c.e2), 2);
    }

    #[test]
    fn counterexample_has_no_geodesic() {
        let c = counterexample_rank5();
        assert_eq!(c.m1.rank(), 5);
        assert_eq!(c.m2.rank(), 5);
        assert!(!subset_matroid(5, c.e1.union(c.e2)).is_regular());
        let s = search_geodesic(5, c.e1, c.e2).unwrap();
        assert!(s.path.is_none());
        assert_eq!(s.blockers, vec![c.e1.intersection(c.e2), c.e1.union(c.e2)]);
        assert_eq!(construct_regular_geodesic(5, c.e1, c.e2), Err(Error::IntersectionDependent));
    }

    #[test]
    fn trivial_and_single_exchange() {
        let b1 = GroundSubset::from_indices([0, 1, 3]);
        let p = construct_regular_geodesic(3, b1, b1).unwrap();
        assert!(p.is_empty());
        let b2 = GroundSubset::from_indices([0, 1, 4]);
        let p = construct_regular_geodesic(3, b1, b2).unwrap();
        assert_eq!(p.steps, vec![b1, b1.union(b2), b2]);
        assert_eq!(construct_regular_geodesic(3, b1, GroundSubset::from_indices([0, 1, 2])), Err(Error::NotInPoset));
    }

    #[test]
    fn nested_pairs_have_geodesics() {
        let b = GroundSubset::from_indices([0, 1, 3]);
        let big = GroundSubset::from_indices([0, 1, 2, 3, 4, 5]);
        assert!(geodesic_exists(3, b, big).unwrap());
        assert!(geodesic_exists(3, big, b).unwrap());
    }

    #[test]
    fn random_rank_three_pairs() {
        let p = enumerate_ir_f2(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 200 {
            let (&e1, &e2) = (p.nodes.choose(&mut rng).unwrap(), p.nodes.choose(&mut rng).unwrap());
            let x = e1.intersection(e2);
            if subset_matroid(3, x).rank() != x.len() {
                continue;
            }
            let path = construct_regular_geodesic(3, e1, e2).unwrap();
            assert_eq!(path.len(), distance(e1, e2));
            assert!(path.steps.iter().all(|s| p.contains(*s)));
            assert!(path.is_regular_path(3));
            assert!(geodesic_exists(3, e1, e2).unwrap());
            tested += 1;
        }
    }
}
