//! Exact multivariate polynomials over QQ and F_p, presented graded rings, and
//! the text DSL.

mod monomial;
mod parse;
mod polynomial;
mod ring;
mod scalar;

pub use monomial::Monomial;
pub use parse::{parse_map, parse_polynomial, parse_ring};
pub(crate) use polynomial::same_ring;
pub use polynomial::{PolyRing, Polynomial};
pub use ring::RingPresentation;
pub use scalar::{Field, Scalar};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic on polynomials of one ambient ring.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}
