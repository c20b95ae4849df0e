//! Canonical JSON for diagrams:
//! `{"inputs": [label...], "layers": [[cell...]...]}` where a label is a
//! formula string, `"L"` or `"R"`, and a cell is `{"id": label}` or
//! `{"gate": name, "params": [formula...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Cell, Diagram, DiagramError, GateKind, GateType, Label};
use crate::formula::{parse_formula, ParseError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error("bad formula {text:?}: {reason}")]
    Formula { text: String, reason: ParseError },
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramRepr {
    inputs: Vec<String>,
    layers: Vec<Vec<CellRepr>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum CellRepr {
    Id { id: String },
    Gate { gate: String, params: Vec<String> },
}

fn formula(text: &str) -> Result<crate::Formula, JsonError> {
    parse_formula(text).map_err(|reason| JsonError::Formula { text: text.to_string(), reason })
}

fn label(text: &str) -> Result<Label, JsonError> {
    Ok(match text {
        "L" => Label::ControlL,
        "R" => Label::ControlR,
        _ => Label::Logical(formula(text)?),
    })
}

fn repr(d: &Diagram) -> DiagramRepr {
    let c = d.canonical_form();
    DiagramRepr {
        inputs: c.input().iter().map(Label::to_string).collect(),
        layers: c
            .layers()
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|cell| match cell {
                        Cell::Wire(l) => CellRepr::Id { id: l.to_string() },
                        Cell::Gate(g) => CellRepr::Gate {
                            gate: g.name().to_string(),
                            params: g.params.iter().map(|p| p.to_string()).collect(),
                        },
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Serializes the canonical form of `d` as a JSON value.
pub fn diagram_to_value(d: &Diagram) -> serde_json::Value {
    serde_json::to_value(repr(d)).expect("plain data")
}

/// Serializes the canonical form of `d` on one line.
pub fn diagram_to_json(d: &Diagram) -> String {
    serde_json::to_string(&repr(d)).expect("plain data")
}

/// Parses and type-checks a diagram.
pub fn diagram_from_json(text: &str) -> Result<Diagram, JsonError> {
    let r: DiagramRepr = serde_json::from_str(text)?;
    let input = r.inputs.iter().map(|t| label(t)).collect::<Result<Vec<_>, _>>()?;
    let mut layers = Vec::with_capacity(r.layers.len());
    for layer in &r.layers {
        let mut cells = Vec::with_capacity(layer.len());
        for cell in layer {
            cells.push(match cell {
                CellRepr::Id { id } => Cell::Wire(label(id)?),
                CellRepr::Gate { gate, params } => {
                    let kind = GateKind::from_name(gate).ok_or_else(|| JsonError::UnknownGate(gate.clone()))?;
                    let params = params.iter().map(|p| formula(p)).collect::<Result<Vec<_>, _>>()?;
                    Cell::Gate(GateType::new(kind, params)?)
                }
            });
        }
        layers.push(cells);
    }
    Ok(Diagram::from_layers(input, layers)?)
}
