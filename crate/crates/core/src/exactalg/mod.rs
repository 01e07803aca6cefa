//! Exact scalars, dense rational linear algebra and the quadratic extension.

mod matrix;
mod quadext;
pub(crate) mod rational;

pub use matrix::ExactMatrix;
pub use quadext::QuadExt;
pub use rational::{ParseRationalError, Rational};

/// Basis of the right kernel of `m`; see [`ExactMatrix::nullspace`].
pub fn nullspace(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    m.nullspace()
}
