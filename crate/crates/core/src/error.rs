use thiserror::Error;

use crate::exactla::Field;

/// Errors raised by the core library.
///
/// Mathematical negatives that are part of an operation's normal output
/// (a violated identity, a failed certificate, "not isoclinic") are returned
/// as values by the respective operations. The variants here are for
/// malformed input and for preconditions that the caller broke.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("subspace is not contained in the enclosing space")]
    NotContained,

    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,

    #[error("{0} is not a prime modulus")]
    InvalidModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("Leibniz identity fails at basis triple ({i}, {j}, {k}) (1-based)", i = .0 + 1, j = .1 + 1, k = .2 + 1)]
    NotLeibniz(usize, usize, usize),

    #[error("no admissible ideal found gives a stem quotient")]
    StemReductionIncomplete,

    #[error("factor set identity violated at basis triple ({i}, {j}, {k}) (1-based)", i = .0 + 1, j = .1 + 1, k = .2 + 1)]
    FactorIdentityViolated(usize, usize, usize),

    #[error("extension bracket failed the Leibniz check at ({i}, {j}, {k}) (1-based)", i = .0 + 1, j = .1 + 1, k = .2 + 1)]
    LeibnizCheckFailed(usize, usize, usize),

    #[error("certificate does not verify: {0}")]
    CertificateInvalid(String),

    #[error("pair is not stem")]
    NotStem,

    #[error("map does not carry the Lie-center block onto the Lie-center block")]
    CenterNotPreserved,

    #[error("matrix is not invertible")]
    Singular,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
