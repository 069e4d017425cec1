use thiserror::Error;

/// Errors raised by constructions and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("exponent mismatch: expected {expected}, got {actual}")]
    ExponentMismatch { expected: String, actual: String },

    #[error("array contains a non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("exponent {p} outside supported range {range}")]
    ExponentOutOfRange { p: String, range: &'static str },

    #[error("level {level} too coarse for Haar atom {n} (needs level >= {required})")]
    LevelTooCoarse { n: usize, level: u32, required: u32 },

    #[error("level {0} exceeds the maximum supported level")]
    LevelTooFine(u32),

    #[error("count {count} exceeds available {available}")]
    CountOutOfRange { count: usize, available: usize },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("frame operator is singular (smallest eigenvalue {0:e})")]
    SingularFrameOperator(f64),

    #[error("defining property S x_j = f_j fails at j = {index} (defect {defect:e} > tol {tol:e})")]
    DefiningProperty { index: usize, defect: f64, tol: f64 },

    #[error("pair is not a Schauder frame at this truncation (reconstruction defect {defect:e} > tol {tol:e})")]
    NotSchauderFrame { defect: f64, tol: f64 },

    #[error("restarts must be at least 1")]
    NoRestarts,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
