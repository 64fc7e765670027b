//! Exact computations with finite-dimensional Hopf algebras acting on
//! commutative differential vertex algebras.

pub mod action;
pub mod hopf;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod schurweyl;
pub mod vertexalg;
