//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GmError {
    /// A definition failed validation; the message carries the defect list.
    #[error("invalid {what}: {details}")]
    Invalid { what: String, details: String },

    /// An enumeration or table would exceed the configured size bound.
    /// Refusal is explicit; nothing is silently truncated.
    #[error("size bound exceeded in {what}: need {need}, bound {bound}")]
    SizeBound {
        what: String,
        need: u128,
        bound: u128,
    },

    /// Lookup of an object/morphism identifier failed.
    #[error("unknown identifier `{0}`")]
    Unknown(String),

    /// A pair of morphisms was not composable.
    #[error("non-composable pair: target of `{f}` is not the source of `{g}`")]
    NonComposable { g: String, f: String },

    /// Tensor cell missing in a partial monoidal category.
    #[error("tensor undefined on ({a}, {b})")]
    TensorUndefined { a: String, b: String },

    /// A construction precondition failed (reported with the failing law).
    #[error("precondition failed for {what}: {details}")]
    Precondition { what: String, details: String },

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl GmError {
    pub fn invalid(what: impl Into<String>, details: impl Into<String>) -> Self {
        GmError::Invalid {
            what: what.into(),
            details: details.into(),
        }
    }

    pub fn precondition(what: impl Into<String>, details: impl Into<String>) -> Self {
        GmError::Precondition {
            what: what.into(),
            details: details.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, GmError>;
