//! Exact arithmetic in the cyclotomic field Q(z), z = exp(2 pi i / 72).
//!
//! The field contains every scalar the model needs: the cube root of unity
//! `w`, `i`, `sqrt2`, `sqrt3` and `tau = exp(-pi i / 9)`.

mod cyclotomic;
mod matrix;
mod parse;
mod rational;

pub use cyclotomic::{Cyclotomic, DEG, GALOIS_UNITS, ORDER};
pub use matrix::{add_vec, inner, norm_sq, scale_vec, sub_vec, Matrix, SparseMatrix};
pub use parse::parse_expr;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not representable in Q(zeta_72): {0}")]
    NotInField(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Shorthand for parsing a field element from a literal expression.
///
/// Panics on malformed input, so it is meant for compiled-in constants.
pub fn cy(expr: &str) -> Cyclotomic {
    parse_expr(expr).unwrap_or_else(|e| panic!("bad constant `{expr}`: {e}"))
}
