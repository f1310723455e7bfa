//! Exact computations with finite-dimensional algebras over prime fields:
//! bound quiver algebras, their module categories, two-term silting
//! complexes and representation dimension.

pub mod algebra;
pub mod ar;
pub mod dsl;
pub mod endk;
pub mod fixtures;
pub mod homological;
pub mod linalg;
pub mod matalg;
pub mod module;
pub mod projective;
pub mod repdim;
pub mod report;
pub mod silting;
pub mod twoterm;
