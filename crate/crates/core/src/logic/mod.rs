//! Sequent calculus side: derivations, compilation to diagrams, the
//! correctness criterion, and sequentialization.

use thiserror::Error;

use crate::diagram::DiagramError;

pub mod compile;
pub mod derivation;
pub mod sequentialize;
pub mod sexp;

pub use compile::{compile, Mode};
pub use derivation::{check_derivation, Derivation, EndSequentReport};
pub use sequentialize::{check_correct, end_sequent, sequentialize};
pub use sexp::{parse_derivation, SexpError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("rule violation in {node}: {reason}")]
    RuleViolation { node: String, reason: String },
    #[error("diagram is not correct: it must map the empty word to L, formulas, R")]
    NotCorrect,
    #[error("cannot sequentialize: {0}")]
    Decomposition(String),
    #[error("unknown compilation mode {0:?}")]
    UnknownMode(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
