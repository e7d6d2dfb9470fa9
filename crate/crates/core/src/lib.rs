//! Poincare-Dulac normal forms of polynomial systems whose coefficients are
//! symbolic parameters, computed level by level in the degree of the
//! parameters.
//!
//! A system `x_k' = lambda_k x_k + x_k * sum_q a_q x^{i_q}` is represented as a
//! [`Gvf`](algebra::Gvf), a sparse map from parameter monomials to vectors of
//! `F^n`. Brackets, the homological operator and the Lie transform all act on
//! that representation with exact Gaussian-rational arithmetic.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod lie;
pub mod normalizer;
pub mod oracle;
pub mod parallel;
pub mod report;

pub use algebra::{CoeffVector, Gvf, MultiIndex, PhaseExponent, Scalar, SystemSpec};
pub use error::{Error, Result};
pub use normalizer::{normalize, NormalFormResult};
