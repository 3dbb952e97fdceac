use thiserror::Error;

use crate::gradedring::Q;

/// Errors raised by the ring, bundle, pipeline and chamber layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A presentation or pipeline input that cannot describe a valid model.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// Operands that live in different rings, or an argument outside its domain.
    #[error("usage error: {0}")]
    Usage(String),

    /// An operation that is only defined for genuine bundles was given a virtual one.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown space `{0}`")]
    UnknownSpace(String),

    /// A quantity that must be an integer came out fractional.
    #[error("non-integral result for {what}: {value}")]
    NonInteger { what: String, value: Q },

    /// Two independent routes to the same number disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("pushforward solver failed ({reason}); discriminant = {discriminant}")]
    Solver { reason: String, discriminant: Q },

    #[error("chamber assembly failed: {0}")]
    Assembly(String),

    #[error("check `{item}` failed: expected {expected}, computed {computed}")]
    CheckFailed {
        item: String,
        expected: i64,
        computed: i64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
