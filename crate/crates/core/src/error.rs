use thiserror::Error;

use crate::exact_linalg::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("operation needs a finite field, got {0}")]
    NotFinite(FieldSpec),

    #[error("{what}: {candidates} candidates exceed the cap of {cap}")]
    CapExceeded {
        what: String,
        candidates: String,
        cap: u64,
    },

    #[error("regularity equation {equation} fails")]
    NotRegular { equation: usize },

    #[error("missing data: {0}")]
    Missing(String),

    #[error("input verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
