//! Layered string diagrams over a polygraph signature.
//!
//! A [`Diagram`] is an input word plus a stack of layers. Every layer is a
//! full horizontal slice: identity wires and gates, read left to right, whose
//! concatenated domains equal the word below it. Layer 0 is the one closest to
//! the inputs.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::view::View;

/// A 1-cell: a string label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Logical(Formula),
    ControlL,
    ControlR,
}

impl Label {
    pub fn is_twisting(&self) -> bool {
        matches!(self, Label::Logical(_))
    }

    pub fn is_control(&self) -> bool {
        !self.is_twisting()
    }

    pub fn formula(&self) -> Option<&Formula> {
        match self {
            Label::Logical(f) => Some(f),
            _ => None,
        }
    }
}

impl From<Formula> for Label {
    fn from(f: Formula) -> Self {
        Label::Logical(f)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Logical(x) => write!(f, "{x}"),
            Label::ControlL => write!(f, "L"),
            Label::ControlR => write!(f, "R"),
        }
    }
}

/// A boundary word; may be empty.
pub type Word = Vec<Label>;

pub fn word_to_string(w: &[Label]) -> String {
    let parts: Vec<String> = w.iter().map(|l| l.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Builds a word of logical labels from formulas.
pub fn logical_word(fs: &[Formula]) -> Word {
    fs.iter().cloned().map(Label::Logical).collect()
}

/// Gate families. The `*C` variants are the control-polygraph versions that
/// carry `L`/`R` strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Swap,
    Ax,
    Cut,
    Tensor,
    Par,
    One,
    Bot,
    AxC,
    CutC,
    TensorC,
    OneC,
}

impl GateKind {
    pub const ALL: [GateKind; 11] = [
        GateKind::Swap,
        GateKind::Ax,
        GateKind::Cut,
        GateKind::Tensor,
        GateKind::Par,
        GateKind::One,
        GateKind::Bot,
        GateKind::AxC,
        GateKind::CutC,
        GateKind::TensorC,
        GateKind::OneC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Swap => "swap",
            GateKind::Ax => "ax",
            GateKind::Cut => "cut",
            GateKind::Tensor => "tensor",
            GateKind::Par => "par",
            GateKind::One => "one",
            GateKind::Bot => "bot",
            GateKind::AxC => "ax_c",
            GateKind::CutC => "cut_c",
            GateKind::TensorC => "tensor_c",
            GateKind::OneC => "one_c",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.iter().copied().find(|k| k.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Swap | GateKind::Tensor | GateKind::Par | GateKind::TensorC => 2,
            GateKind::Ax | GateKind::Cut | GateKind::AxC | GateKind::CutC => 1,
            GateKind::One | GateKind::Bot | GateKind::OneC => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("boundary mismatch at position {position}: expected {expected}, found {found}")]
    BoundaryMismatch {
        expected: String,
        found: String,
        position: usize,
    },
    #[error("gate {name} expects {expected} parameters, got {got}")]
    GateArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("gate offset {offset} out of range for word of length {len}")]
    OffsetOutOfRange { offset: usize, len: usize },
    #[error("control label {label} cannot be twisted")]
    ControlLabel { label: String },
    #[error("output split {split} out of range for {len} outputs")]
    SplitOutOfRange { split: usize, len: usize },
    #[error("diagram has a non-empty input word")]
    NonEmptyInput,
    #[error("diagram is not decomposable at output {split}: a connected component spans both sides")]
    NotDecomposable { split: usize },
}

/// An atomic diagram: a gate family together with its formula indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateType {
    pub kind: GateKind,
    pub params: Vec<Formula>,
}

impl GateType {
    pub fn new(kind: GateKind, params: Vec<Formula>) -> Result<GateType, DiagramError> {
        if params.len() != kind.arity() {
            return Err(DiagramError::GateArity {
                name: kind.name().to_string(),
                expected: kind.arity(),
                got: params.len(),
            });
        }
        Ok(GateType { kind, params })
    }

    pub fn swap(a: Formula, b: Formula) -> GateType {
        GateType { kind: GateKind::Swap, params: vec![a, b] }
    }
    pub fn ax(a: Formula) -> GateType {
        GateType { kind: GateKind::Ax, params: vec![a] }
    }
    pub fn cut(a: Formula) -> GateType {
        GateType { kind: GateKind::Cut, params: vec![a] }
    }
    pub fn tensor(a: Formula, b: Formula) -> GateType {
        GateType { kind: GateKind::Tensor, params: vec![a, b] }
    }
    pub fn par(a: Formula, b: Formula) -> GateType {
        GateType { kind: GateKind::Par, params: vec![a, b] }
    }
    pub fn one() -> GateType {
        GateType { kind: GateKind::One, params: vec![] }
    }
    pub fn bot() -> GateType {
        GateType { kind: GateKind::Bot, params: vec![] }
    }
    pub fn ax_c(a: Formula) -> GateType {
        GateType { kind: GateKind::AxC, params: vec![a] }
    }
    pub fn cut_c(a: Formula) -> GateType {
        GateType { kind: GateKind::CutC, params: vec![a] }
    }
    pub fn tensor_c(a: Formula, b: Formula) -> GateType {
        GateType { kind: GateKind::TensorC, params: vec![a, b] }
    }
    pub fn one_c() -> GateType {
        GateType { kind: GateKind::OneC, params: vec![] }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn is_twisting(&self) -> bool {
        self.kind == GateKind::Swap
    }

    fn p(&self, i: usize) -> Label {
        Label::Logical(self.params[i].clone())
    }

    fn pd(&self, i: usize) -> Label {
        Label::Logical(self.params[i].dual())
    }

    pub fn domain(&self) -> Word {
        use Label::{ControlL as L, ControlR as R};
        match self.kind {
            GateKind::Swap | GateKind::Tensor | GateKind::Par => vec![self.p(0), self.p(1)],
            GateKind::Cut => vec![self.p(0), self.pd(0)],
            GateKind::TensorC => vec![self.p(0), R, L, self.p(1)],
            GateKind::CutC => vec![self.p(0), R, L, self.pd(0)],
            GateKind::Ax | GateKind::AxC | GateKind::One | GateKind::Bot | GateKind::OneC => {
                vec![]
            }
        }
    }

    pub fn codomain(&self) -> Word {
        use Label::{ControlL as L, ControlR as R};
        let f = |x: Formula| Label::Logical(x);
        match self.kind {
            GateKind::Swap => vec![self.p(1), self.p(0)],
            GateKind::Tensor | GateKind::TensorC => {
                vec![f(Formula::tensor(self.params[0].clone(), self.params[1].clone()))]
            }
            GateKind::Par => vec![f(Formula::par(self.params[0].clone(), self.params[1].clone()))],
            GateKind::Ax => vec![self.p(0), self.pd(0)],
            GateKind::AxC => vec![L, self.p(0), self.pd(0), R],
            GateKind::Cut | GateKind::CutC => vec![],
            GateKind::One => vec![f(Formula::One)],
            GateKind::OneC => vec![L, f(Formula::One), R],
            GateKind::Bot => vec![f(Formula::Bot)],
        }
    }

    pub fn dom_len(&self) -> usize {
        match self.kind {
            GateKind::Swap | GateKind::Tensor | GateKind::Par | GateKind::Cut => 2,
            GateKind::TensorC | GateKind::CutC => 4,
            _ => 0,
        }
    }

    pub fn cod_len(&self) -> usize {
        match self.kind {
            GateKind::Swap | GateKind::Ax => 2,
            GateKind::AxC => 4,
            GateKind::OneC => 3,
            GateKind::Cut | GateKind::CutC => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for GateType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", ps.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Wire(Label),
    Gate(GateType),
}

impl Cell {
    pub fn dom_len(&self) -> usize {
        match self {
            Cell::Wire(_) => 1,
            Cell::Gate(g) => g.dom_len(),
        }
    }

    pub fn cod_len(&self) -> usize {
        match self {
            Cell::Wire(_) => 1,
            Cell::Gate(g) => g.cod_len(),
        }
    }

    pub fn gate(&self) -> Option<&GateType> {
        match self {
            Cell::Gate(g) => Some(g),
            Cell::Wire(_) => None,
        }
    }
}

/// One gate applied at a wire offset of the current word; the sequential
/// (one gate per slice) view of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub offset: usize,
    pub gate: GateType,
}

/// A gate occurrence inside a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateRef {
    pub layer: usize,
    /// Wire offset of the gate's first input within the layer's input word.
    pub offset: usize,
    pub gate: GateType,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    input: Word,
    layers: Vec<Vec<Cell>>,
}

fn identity_layer(w: &[Label]) -> Vec<Cell> {
    w.iter().cloned().map(Cell::Wire).collect()
}

fn first_difference(a: &[Label], b: &[Label]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn check_word(expected: &[Label], found: &[Label]) -> Result<(), DiagramError> {
    if expected == found {
        Ok(())
    } else {
        Err(DiagramError::BoundaryMismatch {
            expected: word_to_string(expected),
            found: word_to_string(found),
            position: first_difference(expected, found),
        })
    }
}

impl Diagram {
    pub fn identity(w: Word) -> Diagram {
        Diagram { input: w, layers: vec![] }
    }

    pub fn empty() -> Diagram {
        Diagram::identity(vec![])
    }

    pub fn from_gate(g: GateType) -> Diagram {
        Diagram {
            input: g.domain(),
            layers: vec![vec![Cell::Gate(g)]],
        }
    }

    /// Builds a diagram from explicit layers, checking the typing chain.
    pub fn from_layers(input: Word, layers: Vec<Vec<Cell>>) -> Result<Diagram, DiagramError> {
        let layers = layers.into_iter().filter(|l| !l.is_empty()).collect();
        let d = Diagram { input, layers };
        d.validate()?;
        Ok(d)
    }

    /// Builds a diagram with one gate per layer from a sequence of steps.
    pub fn from_steps(input: Word, steps: &[Step]) -> Result<Diagram, DiagramError> {
        let mut word = input.clone();
        let mut layers = Vec::with_capacity(steps.len());
        for s in steps {
            let dom = s.gate.domain();
            if s.offset + dom.len() > word.len() {
                return Err(DiagramError::OffsetOutOfRange {
                    offset: s.offset,
                    len: word.len(),
                });
            }
            check_word(&dom, &word[s.offset..s.offset + dom.len()])?;
            let mut layer = Vec::with_capacity(word.len());
            layer.extend(word[..s.offset].iter().cloned().map(Cell::Wire));
            layer.push(Cell::Gate(s.gate.clone()));
            layer.extend(word[s.offset + dom.len()..].iter().cloned().map(Cell::Wire));
            word.splice(s.offset..s.offset + dom.len(), s.gate.codomain());
            layers.push(layer);
        }
        Ok(Diagram { input, layers })
    }

    pub fn input(&self) -> &Word {
        &self.input
    }

    pub fn layers(&self) -> &[Vec<Cell>] {
        &self.layers
    }

    pub fn output(&self) -> Word {
        match self.layers.last() {
            None => self.input.clone(),
            Some(l) => layer_output(l),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.input.is_empty() && self.layers.is_empty()
    }

    /// Checks the typing chain; linear in the number of cells. Labels are
    /// compared through borrowed views, so no formula is built.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut current: Vec<View> = self.input.iter().map(View::of).collect();
        let mut next: Vec<View> = Vec::with_capacity(current.len());
        let mut dom: Vec<View> = Vec::with_capacity(4);
        let words = |vs: &[View]| word_to_string(&vs.iter().map(|v| v.to_label()).collect::<Vec<_>>());
        for layer in &self.layers {
            let mut pos = 0;
            next.clear();
            for cell in layer {
                match cell {
                    Cell::Wire(l) => {
                        let here = View::of(l);
                        match current.get(pos) {
                            Some(v) if v.same(here) => {}
                            found => {
                                return Err(DiagramError::BoundaryMismatch {
                                    expected: l.to_string(),
                                    found: found.map_or_else(|| "end of word".to_string(), |v| v.to_label().to_string()),
                                    position: pos,
                                })
                            }
                        }
                        next.push(here);
                        pos += 1;
                    }
                    Cell::Gate(g) => {
                        if g.params.len() != g.kind.arity() {
                            return Err(DiagramError::GateArity {
                                name: g.name().to_string(),
                                expected: g.kind.arity(),
                                got: g.params.len(),
                            });
                        }
                        dom.clear();
                        g.dom_views(&mut dom);
                        let end = pos + dom.len();
                        if end > current.len() {
                            return Err(DiagramError::OffsetOutOfRange {
                                offset: pos,
                                len: current.len(),
                            });
                        }
                        if let Some(k) = (0..dom.len()).find(|&k| !dom[k].same(current[pos + k])) {
                            return Err(DiagramError::BoundaryMismatch {
                                expected: words(&dom),
                                found: words(&current[pos..end]),
                                position: pos + k,
                            });
                        }
                        g.cod_views(&mut next);
                        pos = end;
                    }
                }
            }
            if pos != current.len() {
                return Err(DiagramError::BoundaryMismatch {
                    expected: "end of layer".to_string(),
                    found: current[pos].to_label().to_string(),
                    position: pos,
                });
            }
            std::mem::swap(&mut current, &mut next);
        }
        Ok(())
    }

    pub fn compose_seq(lower: &Diagram, upper: &Diagram) -> Result<Diagram, DiagramError> {
        check_word(&lower.output(), &upper.input)?;
        let mut layers = lower.layers.clone();
        layers.extend(upper.layers.iter().cloned());
        Ok(Diagram { input: lower.input.clone(), layers })
    }

    /// Side by side. The shorter operand is padded with identity layers at the bottom.
    pub fn compose_par(left: &Diagram, right: &Diagram) -> Diagram {
        let h = left.layers.len().max(right.layers.len());
        let pad_l = h - left.layers.len();
        let pad_r = h - right.layers.len();
        let mut layers = Vec::with_capacity(h);
        for i in 0..h {
            let mut layer = if i < pad_l {
                identity_layer(&left.input)
            } else {
                left.layers[i - pad_l].clone()
            };
            if i < pad_r {
                layer.extend(identity_layer(&right.input));
            } else {
                layer.extend(right.layers[i - pad_r].iter().cloned());
            }
            layers.push(layer);
        }
        let mut input = left.input.clone();
        input.extend(right.input.iter().cloned());
        Diagram { input, layers }
    }

    /// `id_left * self * id_right`.
    pub fn whisker(&self, left: &[Label], right: &[Label]) -> Diagram {
        let l = Diagram::identity(left.to_vec());
        let r = Diagram::identity(right.to_vec());
        Diagram::compose_par(&Diagram::compose_par(&l, self), &r)
    }

    pub fn gate_count(&self, filter: Option<&[GateKind]>) -> usize {
        self.gates()
            .filter(|g| filter.map_or(true, |f| f.contains(&g.gate.kind)))
            .count()
    }

    /// Total number of cells, the size measure for linear-time checks.
    pub fn cell_count(&self) -> usize {
        self.layers.iter().map(|l| l.len()).sum()
    }

    pub fn gates(&self) -> impl Iterator<Item = GateRef> + '_ {
        self.layers.iter().enumerate().flat_map(|(li, layer)| {
            let mut pos = 0;
            layer.iter().filter_map(move |c| {
                let here = pos;
                pos += c.dom_len();
                c.gate().map(|g| GateRef { layer: li, offset: here, gate: g.clone() })
            })
        })
    }

    pub fn is_twisting(&self) -> bool {
        self.gates().all(|g| g.gate.is_twisting())
    }

    /// The sequential view: layers read bottom to top, gates left to right,
    /// with offsets into the word current at each step.
    pub fn steps(&self) -> Vec<Step> {
        let mut out = Vec::new();
        for layer in &self.layers {
            let mut pos = 0;
            for c in layer {
                match c {
                    Cell::Wire(_) => pos += 1,
                    Cell::Gate(g) => {
                        out.push(Step { offset: pos, gate: g.clone() });
                        pos += g.cod_len();
                    }
                }
            }
        }
        out
    }

    /// Eager normal form modulo interchange: every gate sits in the lowest
    /// layer its inputs allow; ties at a shared point put zero-input gates
    /// before zero-output gates.
    pub fn canonical_form(&self) -> Diagram {
        let mut layers: Vec<Vec<Cell>> = Vec::new();
        let mut top = self.input.clone();
        for s in self.steps() {
            let dom = s.gate.dom_len();
            let cod = s.gate.codomain();
            let mut layer = identity_layer(&top[..s.offset]);
            layer.push(Cell::Gate(s.gate.clone()));
            layer.extend(identity_layer(&top[s.offset + dom..]));
            top.splice(s.offset..s.offset + dom, cod);
            layers.push(layer);
            let mut li = layers.len() - 1;
            let mut ci = s.offset;
            while li > 0 {
                match sink(&mut layers, li, ci) {
                    Some(new_ci) => {
                        if layers[li].iter().all(|c| matches!(c, Cell::Wire(_))) {
                            layers.remove(li);
                        }
                        li -= 1;
                        ci = new_ci;
                    }
                    None => break,
                }
            }
        }
        for layer in &mut layers {
            order_zero_width(layer);
        }
        Diagram { input: self.input.clone(), layers }
    }

    pub fn equal_mod_interchange(&self, other: &Diagram) -> bool {
        self == other || self.canonical_form() == other.canonical_form()
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }
}

fn layer_output(layer: &[Cell]) -> Word {
    let mut out = Vec::with_capacity(layer.len());
    for c in layer {
        match c {
            Cell::Wire(l) => out.push(l.clone()),
            Cell::Gate(g) => out.extend(g.codomain()),
        }
    }
    out
}

/// Tries to move the gate at cell index `ci` of layer `li` into layer `li-1`.
/// Returns the cell index it now occupies there.
fn sink(layers: &mut [Vec<Cell>], li: usize, ci: usize) -> Option<usize> {
    let gate = layers[li][ci].gate()?.clone();
    let s: usize = layers[li][..ci].iter().map(|c| c.dom_len()).sum();
    let d = gate.dom_len();
    let lower = &layers[li - 1];
    // Locate the output offset of each lower cell.
    let mut out_pos = 0;
    let mut target = None;
    if d == 0 {
        for (j, c) in lower.iter().enumerate() {
            if out_pos == s {
                target = Some((j, j));
                break;
            }
            out_pos += c.cod_len();
            if out_pos > s {
                return None;
            }
        }
        if target.is_none() && out_pos == s {
            target = Some((lower.len(), lower.len()));
        }
    } else {
        let mut start = None;
        for (j, c) in lower.iter().enumerate() {
            let len = c.cod_len();
            if out_pos + len > s && out_pos < s + d {
                if !matches!(c, Cell::Wire(_)) {
                    return None;
                }
                if start.is_none() {
                    start = Some(j);
                }
                if out_pos + 1 == s + d {
                    target = Some((start.unwrap(), j + 1));
                    break;
                }
            }
            out_pos += len;
        }
    }
    let (from, to) = target?;
    let outputs: Vec<Cell> = gate.codomain().into_iter().map(Cell::Wire).collect();
    layers[li].splice(ci..ci + 1, outputs);
    layers[li - 1].splice(from..to, [Cell::Gate(gate)]);
    Some(from)
}

fn order_zero_width(layer: &mut [Cell]) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..layer.len().saturating_sub(1) {
            let zero_out = matches!(&layer[i], Cell::Gate(g) if g.cod_len() == 0);
            let zero_in = matches!(&layer[i + 1], Cell::Gate(g) if g.dom_len() == 0);
            if zero_out && zero_in {
                layer.swap(i, i + 1);
                changed = true;
            }
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} => {}", word_to_string(&self.input), word_to_string(&self.output()))?;
        for (i, layer) in self.layers.iter().enumerate() {
            let cells: Vec<String> = layer
                .iter()
                .map(|c| match c {
                    Cell::Wire(l) => format!("|{l}"),
                    Cell::Gate(g) => g.to_string(),
                })
                .collect();
            writeln!(f, "  {i}: {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All gate kinds that occur in `d`.
pub fn gate_kinds(d: &Diagram) -> BTreeSet<GateKind> {
    d.gates().map(|g| g.gate.kind).collect()
}
