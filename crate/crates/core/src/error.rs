use thiserror::Error;

use crate::validation::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the ambient space")]
    Containment,
    #[error("objects are defined over different rings or algebras")]
    RingMismatch,
    #[error("axiom validation failed:\n{0}")]
    Validation(ValidationReport),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("expected a morphism of degree {expected}, found degree {found}")]
    WrongDegree { expected: i64, found: i64 },
    #[error("not a homogeneous sign-rule morphism: {0}")]
    NotAMorphism(String),
    #[error("support window of width {width} exceeds the cap {cap}")]
    WindowExceeded { width: i64, cap: u32 },
    #[error("Maurer-Cartan equation d(a) + a^2 = 0 fails")]
    MaurerCartan,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("bec invariant fails: {0}")]
    BecInvariant(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}
