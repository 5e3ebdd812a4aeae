use thiserror::Error;

use crate::algebra::Basis;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(Basis, Basis),
    #[error("generator symbols from different bases in one element")]
    MixedSymbols,
    #[error("level must be at least 3 (got {0})")]
    LevelTooSmall(u32),
    #[error("top label {i} out of range for level {k}")]
    TopLabelOutOfRange { k: u32, i: u32 },
    #[error("top index {j} out of range for U^{i}")]
    TopIndexOutOfRange { i: u32, j: u32 },
    #[error("vectors live in different modules")]
    ContextMismatch,
    #[error("degree cap {cap} exceeded (needed {needed})")]
    CapExceeded { cap: u32, needed: u32 },
    #[error("vector is not homogeneous")]
    Inhomogeneous,
    #[error("state is not a sigma-eigenvector; decompose it first")]
    NotSigmaEigen,
    #[error("mode index {index} does not match sigma-grade {grade}")]
    ParityMismatch { index: String, grade: u8 },
    #[error("operation requires a vacuum-module state")]
    NotVacuumModule,
    #[error("unknown named state `{0}`")]
    UnknownState(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expression error: {0}")]
    Expr(String),
    #[error("golden file error: {0}")]
    Golden(String),
    #[error("level {0} outside the supported range")]
    LevelOutOfRange(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
