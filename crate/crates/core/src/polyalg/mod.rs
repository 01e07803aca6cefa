//! Sparse polynomials, rational functions and the expression parser.

mod monomial;
mod parser;
mod poly;
mod ratfunc;
mod vartable;

pub use monomial::Monomial;
pub use parser::{parse_expression, parse_polynomial, scan_names};
pub use poly::{MultiPoly, VarImage};
pub use ratfunc::{ratfunc_equal, RatFunc};
pub use vartable::{unify_tables, TableKind, TableRef, VarTable};
