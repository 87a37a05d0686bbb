//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: left operand lives in `{left}`, right operand in `{right}`")]
    AlphabetMismatch { left: String, right: String },

    #[error("unknown generator `{name}` in algebra `{algebra}`")]
    UnknownGenerator { name: String, algebra: String },

    #[error("unknown algebra `{name}` (not a built-in and not a readable definitions file)")]
    UnknownAlgebra { name: String },

    #[error("rewriting exceeded the step budget of {budget} steps; the bracket table does not terminate under the declared generator order")]
    TerminationBudget { budget: u64 },

    #[error("ill-defined exponential: exponent has a non-nilpotent degree-0 part")]
    IllDefinedExponential,

    #[error("missing coproduct for generator `{name}`")]
    MissingCoproduct { name: String },

    #[error("cannot derive an antipode: coproduct of `{name}` has a correction term at degree 0")]
    NonInvertibleLeadingTerm { name: String },

    #[error("divergent contraction: negative powers of the contraction parameter survive in {entries:?}")]
    DivergentContraction { entries: Vec<String> },

    #[error("singular linear map: the requested change of generators is not invertible")]
    SingularMap,

    #[error("generator name collision: `{name}`")]
    NameCollision { name: String },

    #[error("antisymmetry violated for bracket [{x}, {y}]")]
    Antisymmetry { x: String, y: String },

    #[error("Jacobi/associativity consistency violated on the triple ({x}, {y}, {w})")]
    Jacobi { x: String, y: String, w: String },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("substitution does not cover generator `{name}`")]
    UnmappedGenerator { name: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("tensor rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
