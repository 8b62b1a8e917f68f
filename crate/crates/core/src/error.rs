use thiserror::Error;

use crate::filtered_complex::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic modulus mismatch: Q(ζ_{0}) vs Q(ζ_{1})")]
    ModulusMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid filtered complex: {0}")]
    InvalidComplex(ValidationReport),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(ValidationReport),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("empty simplicial complex")]
    EmptyComplex,
    #[error("negative shift {0}")]
    NegativeShift(String),
    #[error("operator shifts differ: {0} vs {1}")]
    ShiftMismatch(String, String),
    #[error("the given maps are not an operator interleaving: {0}")]
    NotAnInterleaving(String),
    #[error("{0} is not a p-th root of unity for p = {1}")]
    NotRootOfUnity(String, u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("dangling bar reference: {0}")]
    DanglingBar(String),
    #[error("parse error: {0}")]
    Parse(String),
}
