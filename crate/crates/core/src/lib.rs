//! Exact computations in the composition monoid of univariate polynomials
//! over ℚ.

pub mod canonical;
pub mod decomp;
pub mod families;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod syntax;
pub mod tables;

pub use poly::Polynomial;
pub use scalar::Rational;
