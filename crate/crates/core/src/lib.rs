//! Proof diagrams for multiplicative linear logic.
//!
//! Diagrams are layered string diagrams over a signature of gates. The crate
//! covers formulas, the diagram algebra, permutation diagrams, rewriting over
//! the bundled polygraphs, and the translation between sequent derivations
//! and diagrams.

pub mod diagram;
pub mod formula;
pub mod json;
pub mod logic;
pub mod perm;
pub mod polygraph;
pub mod sequential;
mod view;

pub use diagram::{Cell, Diagram, DiagramError, GateKind, GateType, Label, Step, Word};
pub use formula::{parse_formula, print_formula, Formula, ParseError, Sequent};
pub use perm::{canonical_perm_diagram, diagram_to_permutation, Permutation};

/// Interpretation vectors over machine integers.
pub type InterpVector = polygraph::Interp<u64>;
/// Interpretation vectors over arbitrary-precision integers.
pub type InterpBig = polygraph::Interp<num_bigint::BigUint>;
