//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input data (dimension mismatch, missing ones row, ...).
    InvalidInput(String),
    /// The two column spans do not generate the same rational subspace.
    SpanMismatch,
    /// A polytope vertex whose edge cone is not unimodular.
    SingularVertex(String),
    /// Input points span a space of lower dimension than required.
    Degenerate { expected: usize, got: usize },
    /// A matroid with loops where a loopless one is required.
    MatroidLoop(usize),
    /// Combinatorial work limit exceeded.
    BudgetExceeded(String),
    /// The order-k osculating space fills the ambient space, so the
    /// order-k conormal variety carries no information.
    TrivialConormal { m_k: usize, n: usize },
    /// All displacement redraws met a non-generic configuration.
    GenericityExhausted,
    /// Requested operation is outside the supported parameter range.
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::SpanMismatch => write!(f, "column spans generate different rational subspaces"),
            Error::SingularVertex(msg) => write!(f, "singular vertex: {msg}"),
            Error::Degenerate { expected, got } => {
                write!(f, "degenerate configuration: expected dimension {expected}, got {got}")
            }
            Error::MatroidLoop(e) => write!(f, "matroid has a loop at element {e}"),
            Error::BudgetExceeded(msg) => write!(f, "work budget exceeded: {msg}"),
            Error::TrivialConormal { m_k, n } => write!(
                f,
                "order-k conormal is empty/trivial: osculating dimension {m_k} fills P^{n}"
            ),
            Error::GenericityExhausted => {
                write!(f, "no generic displacement found after the redraw limit")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
