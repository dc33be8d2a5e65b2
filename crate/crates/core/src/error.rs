use std::fmt;

use thiserror::Error;

/// Group axiom that failed during table validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Closure,
    LatinSquare,
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Closure => "closure",
            Axiom::LatinSquare => "latin square",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group order {0}: must be at least 1")]
    InvalidOrder(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a group: {axiom} axiom fails at witness ({}, {}, {})", witness.0, witness.1, witness.2)]
    NotAGroup { axiom: Axiom, witness: (u32, u32, u32) },

    #[error("incompatible words: lengths {left} and {right}")]
    IncompatibleWords { left: usize, right: usize },

    #[error("incompatible alphabets: {0}")]
    IncompatibleAlphabets(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("closure violation: product of {left:?} and {right:?} is not a codeword")]
    ClosureViolation { left: Vec<u32>, right: Vec<u32> },

    #[error("resource limit exceeded: {what} (limit {limit}){}", partial.as_ref().map(|p| format!("; partial: {p}")).unwrap_or_default())]
    ResourceLimit {
        what: String,
        limit: u64,
        partial: Option<String>,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            limit,
            partial: None,
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
