//! Floating-point kernels: polynomial roots, quadrature, complex determinants.

pub mod linalg;
pub mod quad;
pub mod roots;

pub use linalg::complex_det;
pub use roots::{poly_roots, poly_roots_from};
