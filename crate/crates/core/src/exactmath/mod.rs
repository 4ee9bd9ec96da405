//! Exact arithmetic: finite fields, dense matrices, subspace enumeration and
//! rational polynomial interpolation.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use field::{fq_make, Elem, FiniteField};
pub use matrix::{Echelon, FMatrix};
pub use poly::{lagrange_fit, QPoly};
pub use subspace::{enumerate_subspaces, gaussian_binomial, gl_order, graded_gl_order, Subspace};
