//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live over different cyclotomic levels N.
    #[error("level mismatch: N={0} vs N={1}")]
    LevelMismatch(u64, u64),

    /// Quasi-shuffle of indices whose outermost twists differ.
    #[error("twist mismatch: outer twists {0} and {1} (mod N={2}) must be equal")]
    TwistMismatch(u64, u64, u64),

    /// A word is not of polylogarithmic shape (index conversion).
    #[error("word has no series-index shape: {0}")]
    WordShape(String),

    /// p-adic roots of unity are only supported for N dividing p-1.
    #[error("unsupported level: N={n} does not divide p-1 for p={p}")]
    UnsupportedLevel { n: u64, p: u64 },

    /// Division by zero or by a non-unit.
    #[error("division by zero or non-invertible element")]
    DivisionByZero,

    /// Harmonic-action expansions are only implemented to depth 2.
    #[error("unsupported depth {0}: harmonic-action expansions are capped at depth 2")]
    UnsupportedDepth(usize),

    /// A truncation certificate could not be established at the given bound.
    #[error("truncation certificate failed: {0}")]
    TruncationCertificate(String),

    /// A connected partition was expected but the given parts are not segments.
    #[error("not a connected partition: {0}")]
    BadPartition(String),

    /// Grammar errors carry the byte position of the offending token.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Invalid configuration (CLI level, prime pairing, precision).
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
