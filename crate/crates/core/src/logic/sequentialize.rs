//! The correctness criterion for control diagrams and sequentialization.

use crate::diagram::{Diagram, GateKind, Label};
use crate::formula::Sequent;
use crate::perm::Permutation;
use crate::sequential::{bubble_to_end, decompose_parallel, last_gates};

use super::derivation::Derivation;
use super::LogicError;

/// A diagram is correct when it is well typed, has no inputs, and its output
/// is `L`, logical labels, `R`. One pass over the cells and the boundary.
pub fn check_correct(d: &Diagram) -> bool {
    if !d.input().is_empty() || d.validate().is_err() {
        return false;
    }
    let out = d.output();
    match out.as_slice() {
        [Label::ControlL, mid @ .., Label::ControlR] => mid.iter().all(Label::is_twisting),
        _ => false,
    }
}

/// The logical labels between the outer `L` and `R`.
pub fn end_sequent(d: &Diagram) -> Result<Sequent, LogicError> {
    if !check_correct(d) {
        return Err(LogicError::NotCorrect);
    }
    let out = d.output();
    let fs = out[1..out.len() - 1].iter().map(|l| l.formula().unwrap().clone()).collect();
    Ok(Sequent::new(fs))
}

/// Recovers a derivation whose end sequent is the diagram's, peeling one
/// gate at a time from the output side.
pub fn sequentialize(d: &Diagram) -> Result<Derivation, LogicError> {
    if !check_correct(d) {
        return Err(LogicError::NotCorrect);
    }
    peel(&d.canonical_form())
}

/// The exchange moving premise position `from` (0-based) to `to`, keeping
/// the relative order of the other formulas.
fn moving(n: usize, from: usize, to: usize) -> Permutation {
    let mut order: Vec<usize> = (1..=n).filter(|&i| i != from + 1).collect();
    order.insert(to, from + 1);
    Permutation::new(order).expect("rearrangement")
}

fn exch_unless_identity(sigma: Permutation, p: Derivation) -> Derivation {
    if sigma.is_identity() {
        p
    } else {
        Derivation::exch(sigma, p)
    }
}

fn peel(d: &Diagram) -> Result<Derivation, LogicError> {
    let steps = d.steps();
    if steps.len() == 1 {
        let g = &steps[0].gate;
        return match g.kind {
            GateKind::AxC => Ok(Derivation::Ax(g.params[0].clone())),
            GateKind::OneC => Ok(Derivation::One),
            _ => Err(LogicError::Decomposition(format!("lone gate {g} is not an axiom"))),
        };
    }
    let mut blocked = None;
    for (gref, offset) in last_gates(d) {
        let i = d.gates().position(|g| g == gref).expect("gate of the diagram");
        let mut seq = bubble_to_end(&steps, i).expect("last gate");
        let step = seq.pop().unwrap();
        let rest = Diagram::from_steps(vec![], &seq)?.canonical_form();
        let n = rest.output().len().saturating_sub(2);
        // position in the sequent, skipping the leading L
        let k = offset.wrapping_sub(1);
        return match step.gate.kind {
            GateKind::Swap => Ok(Derivation::exch(Permutation::transposition(n, k + 1), peel(&rest)?)),
            GateKind::Par => {
                // operands at k, k+1: rotate them to the tail, fuse, rotate back
                let to_tail = Permutation::new(
                    (1..=n).filter(|&i| i != k + 1 && i != k + 2).chain([k + 1, k + 2]).collect(),
                )
                .expect("rearrangement");
                let fused = Derivation::par(exch_unless_identity(to_tail, peel(&rest)?));
                Ok(exch_unless_identity(moving(n - 1, n - 2, k), fused))
            }
            GateKind::Bot => Ok(exch_unless_identity(moving(n + 1, n, k), Derivation::bot(peel(&rest)?))),
            GateKind::TensorC | GateKind::CutC => {
                // the gate's inputs are A, R, L, B starting at `offset`
                let (l, r) = match decompose_parallel(&rest, offset + 2) {
                    Ok(x) => x,
                    Err(e) => {
                        blocked = Some(e);
                        continue;
                    }
                };
                let (pl, pr) = (peel(&l)?, peel(&r)?);
                Ok(match step.gate.kind {
                    GateKind::TensorC => Derivation::tensor(pl, pr),
                    _ => Derivation::cut(step.gate.params[0].clone(), pl, pr),
                })
            }
            _ => continue,
        };
    }
    Err(match blocked {
        Some(e) => e.into(),
        None => LogicError::Decomposition("no gate can be peeled".into()),
    })
}
