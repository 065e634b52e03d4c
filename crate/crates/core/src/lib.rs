//! Exact computer-algebra workbench for U-operator commutation in Jordan
//! algebras: free associative and free special Jordan algebras, graded ideal
//! components, and a concrete split Albert algebra over ℚ.

pub mod albert;
pub mod expr;
pub mod freealg;
pub mod ideal;
pub mod jordan;
pub mod linalg;
pub mod report;
pub mod scalar;
