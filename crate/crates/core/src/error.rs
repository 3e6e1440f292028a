use std::fmt;

use thiserror::Error;

/// What went wrong while reading presentation or family text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownGenerator(String),
    ZeroExponent,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
            ParseErrorKind::ZeroExponent => write!(f, "zero exponent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("coset enumeration exceeded {limit} cosets")]
    Overflow { limit: usize },
    #[error("p*q = {requested} is larger than the search budget {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },
    #[error("<s{gen}^{exponent}> is not a normal subgroup")]
    NotNormal { gen: u8, exponent: usize },
    #[error("{0}")]
    BadParameters(String),
    #[error("no tight chiral polyhedron of type {{{p}, {q}}}")]
    NotAdmissible { p: u64, q: u64 },
    #[error("{0}")]
    RelatorFailure(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotAdmissible { .. }
            | Error::NotNormal { .. }
            | Error::BadParameters(_)
            | Error::RelatorFailure(_)
            | Error::InvalidInput(_) => 1,
            Error::Overflow { .. } | Error::BudgetExceeded { .. } | Error::Io(_) => 2,
            Error::Parse(_) => 3,
        }
    }

    /// Short machine-readable tag for the error class.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Overflow { .. } => "overflow",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::NotNormal { .. } => "not-normal",
            Error::BadParameters(_) => "bad-parameters",
            Error::NotAdmissible { .. } => "not-admissible",
            Error::RelatorFailure(_) => "relator-failure",
            Error::InvalidInput(_) => "invalid-input",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
