//! Exact scalar arithmetic and exact linear algebra over the rationals.

mod covector;
mod gaussian;
mod matrix;
mod rational;

pub use covector::IntCovector;
pub(crate) use covector::serialize_bigint_seq;
pub use gaussian::GaussianRational;
pub use matrix::{in_row_space, QMatrix};
pub use rational::Rational;
