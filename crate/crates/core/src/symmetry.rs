//! `GL(r, F_2)` acting on points, subsets and complexes; conjugacy classes and
//! equivariant Euler characteristics.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::binary_matroid::{Combinations, GroundSubset};
use crate::error::{Error, Result};
use crate::poset::{point_count, point_index, point_word};
use crate::topology::SimplicialComplex;

pub const MAX_GROUP_RANK: usize = 4;

/// An invertible matrix over `F_2`, stored by the images of the `r` bit positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlElement {
    images: Vec<u64>,
}

impl GlElement {
    pub fn identity(r: usize) -> Self {
        Self { images: (0..r).map(|b| 1u64 << b).collect() }
    }

    /// `images[b]` is the image of the vector with only bit `b` set. `None` unless invertible.
    pub fn from_images(images: Vec<u64>) -> Option<Self> {
        let r = images.len();
        let independent = crate::linalg::rank_of_words(images.iter().copied()) == r;
        let in_range = images.iter().all(|&w| r == 64 || w >> r == 0);
        (independent && in_range).then_some(Self { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut rest = v;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out ^= self.images[b];
            rest &= rest - 1;
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GlElement) -> GlElement {
        GlElement { images: other.images.iter().map(|&w| self.apply(w)).collect() }
    }

    pub fn inverse(&self) -> GlElement {
        let r = self.rank();
        let mut images = vec![0u64; r];
        // invert by enumerating the image of every vector; r is small
        for v in 1u64..1 << r {
            let w = self.apply(v);
            if w.is_power_of_two() {
                images[w.trailing_zeros() as usize] = v;
            }
        }
        GlElement { images }
    }

    pub fn order(&self) -> usize {
        let id = GlElement::identity(self.rank());
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// Entry `(i, j)`: bit `i` of the image of bit `j`.
    fn entry(&self, i: usize, j: usize) -> u64 {
        self.images[j] >> i & 1
    }

    /// `det(xI + A)` over `F_2[x]`, as a bitmask of coefficients (bit `k` for `x^k`).
    pub fn characteristic_polynomial(&self) -> u64 {
        let r = self.rank();
        let m: Vec<Vec<u64>> =
            (0..r).map(|i| (0..r).map(|j| self.entry(i, j) ^ if i == j { 0b10 } else { 0 }).collect()).collect();
        poly_det(&m)
    }

    /// Number of nonzero vectors fixed by `self`.
    pub fn fixed_points(&self) -> usize {
        (1u64..1 << self.rank()).filter(|&v| self.apply(v) == v).count()
    }

    /// Permutation of the points of `F_2^r - 0`.
    pub fn point_permutation(&self) -> Vec<usize> {
        (0..point_count(self.rank())).map(|i| point_index(self.apply(point_word(i)))).collect()
    }

    pub fn apply_to_subset(&self, s: GroundSubset) -> GroundSubset {
        GroundSubset::from_indices(s.iter().map(|i| point_index(self.apply(point_word(i)))))
    }
}

fn poly_mul(a: u64, b: u64) -> u64 {
    let mut out = 0;
    let mut b = b;
    let mut k = 0;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a << k;
        }
        b >>= 1;
        k += 1;
    }
    out
}

/// Laplace expansion along the first row; signs vanish in characteristic two.
fn poly_det(m: &[Vec<u64>]) -> u64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<u64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
        total ^= poly_mul(m[0][j], poly_det(&minor));
    }
    total
}

/// All of `GL(r, F_2)`, in lexicographic order of the image lists.
pub fn enumerate_group(r: usize) -> Result<Vec<GlElement>> {
    if r == 0 || r > MAX_GROUP_RANK {
        return Err(Error::RankTooLarge { rank: r, max: MAX_GROUP_RANK });
    }
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(r);
    fn extend(r: usize, images: &mut Vec<u64>, out: &mut Vec<GlElement>) {
        if images.len() == r {
            out.push(GlElement { images: images.clone() });
            return;
        }
        for w in 1u64..1 << r {
            images.push(w);
            if crate::linalg::rank_of_words(images.iter().copied()) == images.len() {
                extend(r, images, out);
            }
            images.pop();
        }
    }
    extend(r, &mut images, &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub label: String,
    #[serde(skip)]
    pub representative: GlElement,
    pub size: usize,
    pub order: usize,
    pub fixed_points: usize,
    /// Coefficients of `det(xI + A)`, bit `k` for `x^k`.
    pub characteristic_polynomial: u64,
}

/// Orbits under conjugation, sorted by element order, class size, fixed-vector count
/// and characteristic polynomial. Classes sharing an order get letter suffixes.
pub fn conjugacy_classes(group: &[GlElement]) -> Vec<ConjugacyClass> {
    let index: HashMap<&GlElement, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let inverses: Vec<GlElement> = group.iter().map(GlElement::inverse).collect();
    let mut assigned = vec![false; group.len()];
    let mut classes = Vec::new();
    for (i, g) in group.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut size = 0;
        for (h, hinv) in group.iter().zip(&inverses) {
            let c = h.compose(g).compose(hinv);
            let j = index[&c];
            if !assigned[j] {
                assigned[j] = true;
                size += 1;
            }
        }
        classes.push(ConjugacyClass {
            label: String::new(),
            representative: g.clone(),
            size,
            order: g.order(),
            fixed_points: g.fixed_points(),
            characteristic_polynomial: g.characteristic_polynomial(),
        });
    }
    classes.sort_by_key(|c| (c.order, c.size, c.fixed_points, c.characteristic_polynomial));
    let mut by_order: HashMap<usize, usize> = HashMap::new();
    for c in &classes {
        *by_order.entry(c.order).or_default() += 1;
    }
    let mut seen: HashMap<usize, u8> = HashMap::new();
    for c in &mut classes {
        c.label = if by_order[&c.order] > 1 {
            let k = seen.entry(c.order).or_default();
            let l = format!("{}{}", c.order, (b'a' + *k) as char);
            *k += 1;
            l
        } else {
            c.order.to_string()
        };
    }
    classes
}

/// Integer values on the conjugacy classes of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub labels: Vec<String>,
    pub sizes: Vec<usize>,
    pub values: Vec<i64>,
}

impl ClassFunction {
    pub fn from_classes(classes: &[ConjugacyClass], f: impl Fn(&ConjugacyClass) -> i64) -> Self {
        Self {
            labels: classes.iter().map(|c| c.label.clone()).collect(),
            sizes: classes.iter().map(|c| c.size).collect(),
            values: classes.iter().map(f).collect(),
        }
    }

    pub fn group_order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `(1/|G|) Σ |C| a(C) b(C)`; the values here are real.
    pub fn inner_product(&self, other: &ClassFunction) -> Ratio<i64> {
        assert_eq!(self.sizes, other.sizes, "class functions on different class lists");
        let sum: i64 = self.sizes.iter().zip(self.values.iter().zip(&other.values)).map(|(&s, (&a, &b))| s as i64 * a * b).sum();
        Ratio::new(sum, self.group_order() as i64)
    }

    #[must_use]
    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        ClassFunction { values, ..self.clone() }
    }

    #[must_use]
    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ClassFunction { values, ..self.clone() }
    }

    pub fn trivial(classes: &[ConjugacyClass]) -> ClassFunction {
        Self::from_classes(classes, |_| 1)
    }
}

/// Number of fixed nonzero vectors on each class.
pub fn action_character_on_points(classes: &[ConjugacyClass]) -> ClassFunction {
    ClassFunction::from_classes(classes, |c| c.fixed_points as i64)
}

/// Parity of the permutation `sorted ↦ image`, both listing the same vertices.
fn parity_sign(sorted: &[usize], image: &[usize]) -> i64 {
    let pos: Vec<usize> = image.iter().map(|v| sorted.binary_search(v).expect("same vertex set")).collect();
    let mut seen = vec![false; pos.len()];
    let mut sign = 1;
    for i in 0..pos.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = pos[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Trace of a vertex permutation on the span of the oriented simplices in `family`
/// (each a sorted vertex list, the family closed under the permutation).
pub fn oriented_trace(perm: &[usize], family: &[Vec<usize>]) -> i64 {
    family
        .iter()
        .filter_map(|s| {
            let image: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
            let mut sorted_image = image.clone();
            sorted_image.sort_unstable();
            (sorted_image == *s).then(|| parity_sign(s, &image))
        })
        .sum()
}

/// Lefschetz number `Σ_d (-1)^d tr(g | C_d)` of a simplicial vertex permutation.
pub fn hopf_trace_at(k: &SimplicialComplex, perm: &[usize]) -> Result<i64> {
    if k.permute(perm).is_none() {
        return Err(Error::ActionNotSimplicial);
    }
    Ok(k
        .faces()
        .iter()
        .enumerate()
        .map(|(d, faces)| if d % 2 == 0 { oriented_trace(perm, faces) } else { -oriented_trace(perm, faces) })
        .sum())
}

/// The equivariant Euler characteristic, one value per class; `action` gives the
/// vertex permutation of a group element.
pub fn hopf_trace_character(
    k: &SimplicialComplex,
    classes: &[ConjugacyClass],
    action: impl Fn(&GlElement) -> Vec<usize>,
) -> Result<ClassFunction> {
    let values = classes.iter().map(|c| hopf_trace_at(k, &action(&c.representative))).collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction {
        labels: classes.iter().map(|c| c.label.clone()).collect(),
        sizes: classes.iter().map(|c| c.size).collect(),
        values,
    })
}

/// Character of the top homology of a complex homotopy equivalent to a wedge of
/// 3-spheres with eight spheres: `trivial - hopf trace`.
pub fn h3_character(
    k: &SimplicialComplex,
    classes: &[ConjugacyClass],
    action: impl Fn(&GlElement) -> Vec<usize>,
) -> Result<ClassFunction> {
    let expected = vec![1, 0, 0, 8];
    let found = k.homology().betti;
    if found != expected {
        return Err(Error::BettiMismatch { expected, found });
    }
    let hopf = hopf_trace_character(k, classes, action)?;
    Ok(ClassFunction::trivial(classes).sub(&hopf))
}

/// Oriented subsets of the points of `F_2^r - 0` of a given size.
pub fn point_subsets(r: usize, size: usize) -> Vec<Vec<usize>> {
    Combinations::new(point_count(r), size).map(GroundSubset::to_vec).collect()
}

/// The lines of `F_2^3 - 0` (three-point hyperplanes), as sorted point lists.
pub fn hyperplanes_r3() -> Vec<Vec<usize>> {
    (1u64..8)
        .map(|f| (0..7).filter(|&i| (point_word(i) & f).count_ones().is_multiple_of(2)).collect())
        .collect()
}

/// A character value of the reference table: an integer, `z = γ + γ² + γ⁴` or its conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableValue {
    Int(i64),
    Z,
    ZBar,
}

pub struct CharacterTable {
    pub labels: [&'static str; 6],
    pub sizes: [usize; 6],
    pub rows: [[TableValue; 6]; 6],
}

/// The character table of `SL(3, F_2)`, with classes in canonical order.
pub fn sl3_character_table() -> CharacterTable {
    use TableValue::{Int as I, Z, ZBar as W};
    CharacterTable {
        labels: ["1", "2", "3", "4", "7a", "7b"],
        sizes: [1, 21, 56, 42, 24, 24],
        rows: [
            [I(1), I(1), I(1), I(1), I(1), I(1)],
            [I(6), I(2), I(0), I(0), I(-1), I(-1)],
            [I(7), I(-1), I(1), I(-1), I(0), I(0)],
            [I(8), I(0), I(-1), I(0), I(1), I(1)],
            [I(3), I(-1), I(0), I(1), Z, W],
            [I(3), I(-1), I(0), I(1), W, Z],
        ],
    }
}

impl CharacterTable {
    /// Index of the row equal to an integer-valued class function, if any.
    pub fn find_row(&self, f: &ClassFunction) -> Option<usize> {
        if f.labels.iter().map(String::as_str).ne(self.labels.iter().copied()) {
            return None;
        }
        self.rows.iter().position(|row| row.iter().zip(&f.values).all(|(t, &v)| *t == TableValue::Int(v)))
    }
}
