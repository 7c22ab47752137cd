//! Regular matroids over GF(2) and the integers, their fiber posets, and the
//! topology of the associated order complexes.

#![allow(clippy::needless_range_loop)]

pub mod binary_matroid;
pub mod error;
pub mod geodesy;
pub mod graphs;
pub mod io;
pub mod linalg;
pub mod oriented;
pub mod poset;
pub mod symmetry;
pub mod topology;

pub use binary_matroid::{BinaryMatroid, FanoKind, GroundSubset};
pub use error::{Error, Result};
pub use linalg::{F2Matrix, IntMatrix};
