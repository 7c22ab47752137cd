//! Exact linear algebra over GF(2) and the integers.

mod f2;
mod int;

pub use f2::{nullspace_f2, rank_f2, rank_of_words, F2Matrix, F2Vector, WordBasis};
pub use int::{
    is_unimodular_basis, smith_normal_form, smith_with_left_transform, IntMatrix, SmithForm,
    SmithWithTransform,
};
