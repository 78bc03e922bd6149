use thiserror::Error;

use crate::kernel::Cell;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate value {0}")]
    Duplicate(i64),
    #[error("value {value} out of range 1..={len}")]
    OutOfRange { value: i64, len: usize },
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("{0} is not a kernel permutation")]
    NotKernel(String),
    #[error("order violation: cells {0} and {1} are incomparable")]
    OrderViolation(Cell, Cell),
    #[error("entries outside a single feasible cell: {0}")]
    CellViolation(String),
    #[error("expected {expected} cell contents, got {got}")]
    ContentLength { expected: usize, got: usize },
    #[error("exceptional shape needs r >= 1")]
    ExceptionalOrder,
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at origin")]
    PoleAtOrigin,
    #[error("catalog covers r <= {have}, requested {want}")]
    CatalogTooSmall { have: u32, want: u32 },
    #[error("non-integral coefficient {coeff} at x^{index}")]
    NonIntegral { index: usize, coeff: String },
    #[error("n = {n} exceeds oracle guard {guard}")]
    Guard { n: usize, guard: usize },
    #[error("catalog format: {0}")]
    Catalog(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
