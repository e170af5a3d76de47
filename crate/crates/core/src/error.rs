use thiserror::Error;

/// Errors raised by the algebraic engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("table is not a Latin square (row or column {0} repeats an entry)")]
    NotLatinSquare(usize),
    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("size cap exceeded: {what} = {size} > {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("cochain is not a cocycle{}", witness.as_ref().map(|w| format!(" (fails at {w:?})")).unwrap_or_default())]
    NotCocycle { witness: Option<Vec<usize>> },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("ambient mismatch: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical tolerance exceeded: {what} = {value:e} > {tol:e}")]
    Tolerance { what: String, value: f64, tol: f64 },
    #[error("convention check failed: {0}")]
    Convention(String),
    #[error("non-abelian input where an abelian group is required")]
    NonAbelian,
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn cap(what: impl Into<String>, size: usize, cap: usize) -> Self {
        Error::CapExceeded { what: what.into(), size, cap }
    }

    /// Whether this error signals a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
