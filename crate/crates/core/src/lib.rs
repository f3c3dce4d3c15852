//! Exact exterior calculus for SU(3)-structures on six-dimensional nilpotent
//! Lie algebras and the induced G2-structures with skew torsion on N x S^1.

pub mod exterior;
pub mod families;
pub mod g2;
pub mod liealg;
pub mod linalg;
pub mod scalar;
pub mod su3;
