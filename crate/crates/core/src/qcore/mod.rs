//! Exact scalar field `Q(v)` with `v^2 = q`, polynomials over it, and the
//! q-combinatorial primitives used by every other module.

mod intpoly;
mod parse;
mod poly;
mod qfuncs;
mod scalar;

pub use intpoly::IntPoly;
pub use parse::{parse_poly, parse_scalar};
pub use poly::{Monomial, Poly};
pub use qfuncs::{
    binomial, q_binomial, q_factorial, q_half_pow, q_int, q_pochhammer, q_pochhammer_at,
    q_shifted_factorial, q_triangular,
};
pub use scalar::{scalar_normalize, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value contains odd powers of v and cannot be evaluated at a rational q")]
    OddPowerOfV,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
