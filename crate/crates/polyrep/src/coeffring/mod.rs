//! Exact scalars: rational functions in named params with formal radicals.

mod poly;
mod scalar;
mod var;

pub use poly::{gcd, Coeff, Monomial, Poly};
pub use scalar::Scalar;
pub use var::{declare_radical, resolve, Resolved, Var, DEFAULT_RADICALS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inconsistent radical: {0}")]
    InconsistentRadical(String),
}
