//! Exact multivariate polynomials with pluggable monomial orders.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{is_identifier, Ring, RingRef};
pub(crate) use ring::same_ring as ring_eq;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("variable name '{0}' already in use")]
    NameCollision(String),
    #[error("'{0}' is not a valid variable name")]
    InvalidVariableName(String),
    #[error("variable '{0}' has no assignment and is missing from the target ring")]
    UnassignedVariable(String),
}
