//! Borrowed views of boundary labels, so typing checks can compare gate
//! boundaries against wires without building formulas.

use crate::diagram::{GateKind, GateType, Label};
use crate::formula::Formula;

/// A label as seen on a wire: a control symbol, a formula taken as is or
/// dualized, or the output of a connective or unit gate.
#[derive(Clone, Copy, Debug)]
pub(crate) enum View<'a> {
    L,
    R,
    F(&'a Formula, bool),
    Tensor(&'a Formula, &'a Formula),
    Par(&'a Formula, &'a Formula),
    One,
    Bot,
}

/// Outermost constructor of a formula under a polarity.
enum Head<'a> {
    Atom(&'a str, bool),
    One,
    Bot,
    Tensor((&'a Formula, bool), (&'a Formula, bool)),
    Par((&'a Formula, bool), (&'a Formula, bool)),
}

fn head(f: &Formula, dual: bool) -> Head<'_> {
    match (f, dual) {
        (Formula::Atom(a), d) => Head::Atom(a, d),
        (Formula::DualAtom(a), d) => Head::Atom(a, !d),
        (Formula::One, false) | (Formula::Bot, true) => Head::One,
        (Formula::Bot, false) | (Formula::One, true) => Head::Bot,
        (Formula::Tensor(x, y), false) => Head::Tensor((x, false), (y, false)),
        (Formula::Par(x, y), false) => Head::Par((x, false), (y, false)),
        (Formula::Tensor(x, y), true) => Head::Par((y, true), (x, true)),
        (Formula::Par(x, y), true) => Head::Tensor((y, true), (x, true)),
    }
}

fn eq_pol(a: (&Formula, bool), b: (&Formula, bool)) -> bool {
    eq_head(head(a.0, a.1), head(b.0, b.1))
}

fn eq_head(a: Head, b: Head) -> bool {
    match (a, b) {
        (Head::Atom(x, dx), Head::Atom(y, dy)) => x == y && dx == dy,
        (Head::One, Head::One) | (Head::Bot, Head::Bot) => true,
        (Head::Tensor(a1, a2), Head::Tensor(b1, b2)) | (Head::Par(a1, a2), Head::Par(b1, b2)) => {
            eq_pol(a1, b1) && eq_pol(a2, b2)
        }
        _ => false,
    }
}

impl<'a> View<'a> {
    pub(crate) fn of(l: &'a Label) -> View<'a> {
        match l {
            Label::ControlL => View::L,
            Label::ControlR => View::R,
            Label::Logical(f) => View::F(f, false),
        }
    }

    fn head(self) -> Option<Head<'a>> {
        match self {
            View::L | View::R => None,
            View::F(f, d) => Some(head(f, d)),
            View::Tensor(x, y) => Some(Head::Tensor((x, false), (y, false))),
            View::Par(x, y) => Some(Head::Par((x, false), (y, false))),
            View::One => Some(Head::One),
            View::Bot => Some(Head::Bot),
        }
    }

    pub(crate) fn same(self, other: View) -> bool {
        match (self, other) {
            (View::L, View::L) | (View::R, View::R) => true,
            (View::L | View::R, _) | (_, View::L | View::R) => false,
            (a, b) => match (a.head(), b.head()) {
                (Some(x), Some(y)) => eq_head(x, y),
                _ => false,
            },
        }
    }

    pub(crate) fn to_label(self) -> Label {
        match self {
            View::L => Label::ControlL,
            View::R => Label::ControlR,
            View::F(f, false) => Label::Logical(f.clone()),
            View::F(f, true) => Label::Logical(f.dual()),
            View::Tensor(x, y) => Label::Logical(Formula::tensor(x.clone(), y.clone())),
            View::Par(x, y) => Label::Logical(Formula::par(x.clone(), y.clone())),
            View::One => Label::Logical(Formula::One),
            View::Bot => Label::Logical(Formula::Bot),
        }
    }
}

impl GateType {
    pub(crate) fn dom_views<'a>(&'a self, out: &mut Vec<View<'a>>) {
        let p = |i: usize| View::F(&self.params[i], false);
        let pd = |i: usize| View::F(&self.params[i], true);
        match self.kind {
            GateKind::Swap | GateKind::Tensor | GateKind::Par => out.extend([p(0), p(1)]),
            GateKind::Cut => out.extend([p(0), pd(0)]),
            GateKind::TensorC => out.extend([p(0), View::R, View::L, p(1)]),
            GateKind::CutC => out.extend([p(0), View::R, View::L, pd(0)]),
            GateKind::Ax | GateKind::AxC | GateKind::One | GateKind::Bot | GateKind::OneC => {}
        }
    }

    pub(crate) fn cod_views<'a>(&'a self, out: &mut Vec<View<'a>>) {
        let p = |i: usize| View::F(&self.params[i], false);
        let pd = |i: usize| View::F(&self.params[i], true);
        match self.kind {
            GateKind::Swap => out.extend([p(1), p(0)]),
            GateKind::Tensor | GateKind::TensorC => out.push(View::Tensor(&self.params[0], &self.params[1])),
            GateKind::Par => out.push(View::Par(&self.params[0], &self.params[1])),
            GateKind::Ax => out.extend([p(0), pd(0)]),
            GateKind::AxC => out.extend([View::L, p(0), pd(0), View::R]),
            GateKind::Cut | GateKind::CutC => {}
            GateKind::One => out.push(View::One),
            GateKind::OneC => out.extend([View::L, View::One, View::R]),
            GateKind::Bot => out.push(View::Bot),
        }
    }
}
