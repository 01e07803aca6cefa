//! Exact computation of rational differential invariants of binary and
//! ternary forms and of plane curves.
//!
//! The crate is layered: [`exactalg`] and [`polyalg`] provide exact scalars,
//! polynomials and rational functions; [`jets`] adds jet coordinates, total
//! derivatives, prolongation and Tresse frames; [`sl2inv`], [`formsalg`],
//! [`syzygy`], [`affineinv`] and [`sl3inv`] build the invariant theory on
//! top; [`cli`] drives everything from the command line.

pub mod affineinv;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod formsalg;
pub mod jets;
pub mod polyalg;
pub mod sl2inv;
pub mod sl3inv;
pub mod syzygy;

pub use error::{Error, Result};
pub use exactalg::{ExactMatrix, QuadExt, Rational};
pub use polyalg::{MultiPoly, RatFunc, VarTable};
