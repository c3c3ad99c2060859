use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inexact division")]
    InexactDivision,

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at q = {0}")]
    Pole(String),

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term must be {expected}, found {found}")]
    ConstantTerm { expected: &'static str, found: String },

    #[error("non-polynomial result for {what}")]
    NonPolynomial { what: String },

    #[error("non-integral coefficients in {what}")]
    NonIntegral { what: String },

    #[error("degree bound violated for {what}: degree {degree} > {bound}")]
    DegreeBound { what: String, degree: usize, bound: usize },

    #[error("route disagreement for {what} at X^{index}")]
    RouteMismatch { what: String, index: usize },

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures that signal a broken invariant inside the engine
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonPolynomial { .. }
                | Error::NonIntegral { .. }
                | Error::DegreeBound { .. }
                | Error::RouteMismatch { .. }
        )
    }
}
