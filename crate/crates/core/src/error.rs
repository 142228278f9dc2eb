use thiserror::Error;

use crate::gf2::Gf2Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("illegal operation: {0}")]
    IllegalOp(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}
