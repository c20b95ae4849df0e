//! Derivations to proof diagrams.

use std::str::FromStr;

use crate::diagram::{logical_word, Diagram, GateType, Label, Step, Word};
use crate::formula::Formula;
use crate::perm::canonical_perm_diagram;

use super::derivation::{check_derivation, Derivation};
use super::LogicError;

/// Target signature: the plain polygraphs or the control ones carrying `L`/`R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Control,
}

impl FromStr for Mode {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Mode::Plain),
            "control" => Ok(Mode::Control),
            other => Err(LogicError::UnknownMode(other.to_string())),
        }
    }
}

/// Compiles a checked derivation. In plain mode the result is `ε => Γ`, in
/// control mode `ε => L, Γ, R`. The diagram is built by composition and is
/// not put in canonical form.
pub fn compile(d: &Derivation, mode: Mode) -> Result<Diagram, LogicError> {
    check_derivation(d)?;
    Ok(build(d, mode).0)
}

/// Adds one gate on top of `below` at `offset` of its output.
fn stack(below: Diagram, offset: usize, gate: GateType) -> Diagram {
    let top = Diagram::from_steps(below.output(), &[Step { offset, gate }]).expect("compiled gate fits");
    Diagram::compose_seq(&below, &top).expect("boundaries agree")
}

/// Returns the diagram and the sequent it proves.
fn build(d: &Derivation, mode: Mode) -> (Diagram, Vec<Formula>) {
    let ctl = usize::from(mode == Mode::Control);
    match d {
        Derivation::Ax(a) => {
            let g = match mode {
                Mode::Plain => GateType::ax(a.clone()),
                Mode::Control => GateType::ax_c(a.clone()),
            };
            (Diagram::from_gate(g), vec![a.clone(), a.dual()])
        }
        Derivation::One => {
            let g = match mode {
                Mode::Plain => GateType::one(),
                Mode::Control => GateType::one_c(),
            };
            (Diagram::from_gate(g), vec![Formula::One])
        }
        Derivation::Bot(p) => {
            let (dp, mut g) = build(p, mode);
            let out = stack(dp, ctl + g.len(), GateType::bot());
            g.push(Formula::Bot);
            (out, g)
        }
        Derivation::Par(p) => {
            let (dp, mut g) = build(p, mode);
            let n = g.len();
            let b = g.pop().unwrap();
            let a = g.pop().unwrap();
            let out = stack(dp, ctl + n - 2, GateType::par(a.clone(), b.clone()));
            g.push(Formula::par(a, b));
            (out, g)
        }
        Derivation::Tensor(l, r) | Derivation::Cut(_, l, r) => {
            let (dl, mut gl) = build(l, mode);
            let (dr, gr) = build(r, mode);
            let a = gl.pop().unwrap();
            let b = gr[0].clone();
            let side = Diagram::compose_par(&dl, &dr);
            let offset = ctl + gl.len();
            let gate = match (d, mode) {
                (Derivation::Tensor(..), Mode::Plain) => GateType::tensor(a.clone(), b.clone()),
                (Derivation::Tensor(..), Mode::Control) => GateType::tensor_c(a.clone(), b.clone()),
                (_, Mode::Plain) => GateType::cut(a.clone()),
                (_, Mode::Control) => GateType::cut_c(a.clone()),
            };
            let out = stack(side, offset, gate);
            if matches!(d, Derivation::Tensor(..)) {
                gl.push(Formula::tensor(a, b));
            }
            gl.extend(gr.into_iter().skip(1));
            (out, gl)
        }
        Derivation::Exch(sigma, p) => {
            let (dp, g) = build(p, mode);
            let word = logical_word(&g);
            let perm = canonical_perm_diagram(&sigma.inverse(), &word).expect("logical labels twist");
            let perm = match mode {
                Mode::Plain => perm,
                Mode::Control => perm.whisker(&[Label::ControlL], &[Label::ControlR]),
            };
            let out = Diagram::compose_seq(&dp, &perm).expect("boundaries agree");
            let conclusion = (1..=g.len()).map(|i| g[sigma.apply(i) - 1].clone()).collect();
            (out, conclusion)
        }
    }
}

/// The output word a compiled derivation with end sequent `g` has.
pub fn expected_output(g: &[Formula], mode: Mode) -> Word {
    let mut w = logical_word(g);
    if mode == Mode::Control {
        w.insert(0, Label::ControlL);
        w.push(Label::ControlR);
    }
    w
}
