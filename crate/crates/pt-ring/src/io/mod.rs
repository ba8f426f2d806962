//! Serialization of results: CSV tables, SVG figures, run manifests, and
//! the plain-text configuration file.

pub mod csv;
pub mod manifest;
pub mod svg;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: malformed line (expected `key = value`): {content:?}")]
    ParseLine {
        path: String,
        line: usize,
        content: String,
    },
    #[error("{path}:{line}: unknown key {key:?}")]
    UnknownKey {
        path: String,
        line: usize,
        key: String,
    },
    #[error("{path}:{line}: bad value for {key:?}: {detail}")]
    BadValue {
        path: String,
        line: usize,
        key: String,
        detail: String,
    },
}
