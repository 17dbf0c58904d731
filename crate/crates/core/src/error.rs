use std::fmt;

use thiserror::Error;

/// A named invariant that a representation failed to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Short invariant name such as `V2` or `associativity`.
    pub invariant: String,
    pub detail: String,
}

impl Violation {
    pub fn new(invariant: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation { invariant: invariant.into(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated: {}", self.invariant, self.detail)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("unital flag mismatch: {0}")]
    UnitalMismatch(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("empty-word term at position {0} is not allowed in a non-unital polynomial")]
    EmptyWordTerm(usize),
    #[error("invalid representation: {}", list(.0))]
    InvalidRep(Vec<Violation>),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("polynomial `{0}` is not a member")]
    NotMember(String),
    #[error("outside the span of the U-images: {0}")]
    OutsideSpan(String),
    #[error("search space exceeds {0} unknowns")]
    SearchLimit(usize),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("invalid document: {0}")]
    Document(String),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
