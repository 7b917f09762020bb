//! Exact rational linear algebra: echelon forms, rank, kernels and
//! direct-sum tests. No floating point is used anywhere in here.

mod matrix;
mod rational;

pub use matrix::{
    in_column_space, kernel_basis, rank, rref, spans_direct_sum, LinalgError, RationalMatrix,
};
pub use rational::{ParseRationalError, Rational};
