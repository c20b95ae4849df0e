//! Rewriting over the bundled polygraphs.
//!
//! A [`Polygraph`] fixes the gate families admitted in its diagrams and a list
//! of schematic [`RewriteRule`]s. Rule templates are ordinary diagrams whose
//! labels mention metavariables; [`find_redexes`] binds them on the fly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, GateKind, GateType, Label};
use crate::formula::{closure, Formula};

pub mod cut;
pub mod equiv;
pub mod interp;
pub mod matching;
pub mod peaks;
pub mod rewrite;
mod rewire;
mod rules;

pub use cut::{cut_eliminate, find_ax_cut_redexes};
pub use equiv::{twist_equivalent, Equivalence};
pub use interp::{check_decrease, interp_eval, Interp};
pub use matching::{apply, apply_at, find_redexes, Match};
pub use peaks::{check_joinable, critical_peaks_s, Joinability, Peak};
pub use rewrite::{all_redexes, normalize, replay, NormalizeOutcome, Strategy, TraceEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("formula universe is not closed: {0} is missing")]
    UniverseNotClosed(String),
    #[error("unknown polygraph {0:?}")]
    UnknownPolygraph(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("match for rule {rule} no longer fits the diagram")]
    StaleMatch { rule: String },
    #[error("rule {rule} has no redex anchored at layer {layer}, offset {offset}")]
    NoRedexAt { rule: String, layer: usize, offset: usize },
    #[error("polygraph {0} has no cut-elimination rules")]
    NoCutRules(String),
    #[error("gate {0} does not belong to the polygraph")]
    ForeignGate(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleFamily {
    TwistInvolution,
    YangBaxter,
    Naturality,
    AxInvolution,
    CutElimination,
    Unit,
}

impl RuleFamily {
    pub fn is_twisting(self) -> bool {
        self != RuleFamily::CutElimination
    }
}

/// An oriented 3-cell `lhs => rhs` between diagrams with equal boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub family: RuleFamily,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

impl RewriteRule {
    /// The same relation in the opposite orientation, or `None` when the
    /// right-hand side has no gate to anchor on.
    pub fn reversed(&self) -> Option<RewriteRule> {
        if self.rhs.gate_count(None) == 0 {
            return None;
        }
        Some(RewriteRule {
            name: format!("{}~", self.name),
            family: self.family,
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolygraphName {
    S,
    Mll,
    Mllc,
    CtrlMll,
    CtrlMllc,
}

impl PolygraphName {
    pub const ALL: [PolygraphName; 5] = [
        PolygraphName::S,
        PolygraphName::Mll,
        PolygraphName::Mllc,
        PolygraphName::CtrlMll,
        PolygraphName::CtrlMllc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolygraphName::S => "S",
            PolygraphName::Mll => "MLL",
            PolygraphName::Mllc => "MLLc",
            PolygraphName::CtrlMll => "ctrlMLL",
            PolygraphName::CtrlMllc => "ctrlMLLc",
        }
    }

    pub fn is_control(self) -> bool {
        matches!(self, PolygraphName::CtrlMll | PolygraphName::CtrlMllc)
    }

    pub fn has_units(self) -> bool {
        matches!(self, PolygraphName::Mllc | PolygraphName::CtrlMllc)
    }
}

impl fmt::Display for PolygraphName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolygraphName {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolygraphName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| RewriteError::UnknownPolygraph(s.to_string()))
    }
}

/// A polygraph instance over a formula universe.
#[derive(Clone, Debug)]
pub struct Polygraph {
    pub name: PolygraphName,
    pub universe: BTreeSet<Formula>,
    pub rules: Vec<RewriteRule>,
    /// Whether the lazily instantiated axiom-cut family is part of the rules.
    pub ax_cut: bool,
}

/// Builds a bundled polygraph. The universe must already be closed under
/// subformulas and duality; see [`instantiate_closed`] to compute the closure.
pub fn instantiate(name: PolygraphName, universe: &[Formula]) -> Result<Polygraph, RewriteError> {
    let set: BTreeSet<Formula> = universe.iter().cloned().collect();
    let closed = closure(universe);
    if let Some(missing) = closed.difference(&set).next() {
        return Err(RewriteError::UniverseNotClosed(missing.to_string()));
    }
    let units = name.has_units();
    let rules = match name {
        PolygraphName::S => rules::permutation_rules(),
        PolygraphName::Mll | PolygraphName::Mllc => {
            let mut r = rules::plain_twisting(units);
            r.extend(rules::plain_cut(units));
            r
        }
        PolygraphName::CtrlMll | PolygraphName::CtrlMllc => rules::control_twisting(units),
    };
    Ok(Polygraph {
        name,
        universe: set,
        rules,
        ax_cut: matches!(name, PolygraphName::Mll | PolygraphName::Mllc),
    })
}

/// [`instantiate`] over the closure of `seeds`.
pub fn instantiate_closed(name: PolygraphName, seeds: &[Formula]) -> Polygraph {
    let universe: Vec<Formula> = closure(seeds).into_iter().collect();
    instantiate(name, &universe).expect("closure is closed")
}

/// Every formula labelling a wire or indexing a gate of `d`.
pub fn diagram_formulas(d: &Diagram) -> Vec<Formula> {
    let mut out = BTreeSet::new();
    for l in d.input() {
        if let Label::Logical(f) = l {
            out.insert(f.clone());
        }
    }
    for g in d.gates() {
        out.extend(g.gate.params.iter().cloned());
        for l in g.gate.codomain() {
            if let Label::Logical(f) = l {
                out.insert(f);
            }
        }
    }
    out.into_iter().collect()
}

impl Polygraph {
    pub fn gate_families(&self) -> Vec<GateKind> {
        use GateKind::*;
        let mut v = match self.name {
            PolygraphName::S => vec![Swap],
            PolygraphName::Mll | PolygraphName::Mllc => vec![Swap, Ax, Cut, Tensor, Par],
            PolygraphName::CtrlMll | PolygraphName::CtrlMllc => vec![Swap, AxC, CutC, TensorC, Par],
        };
        if self.name.has_units() {
            v.push(if self.name.is_control() { OneC } else { One });
            v.push(Bot);
        }
        v
    }

    /// All gates of the signature indexed by formulas of the universe.
    pub fn gate_instances(&self) -> Vec<GateType> {
        let u: Vec<&Formula> = self.universe.iter().collect();
        let mut out = Vec::new();
        for kind in self.gate_families() {
            match kind.arity() {
                0 => out.push(GateType { kind, params: vec![] }),
                1 => out.extend(u.iter().map(|f| GateType { kind, params: vec![(*f).clone()] })),
                _ => {
                    for x in &u {
                        for y in &u {
                            let pair = vec![(*x).clone(), (*y).clone()];
                            let keep = match kind {
                                GateKind::Swap => true,
                                GateKind::Par => self
                                    .universe
                                    .contains(&Formula::par((*x).clone(), (*y).clone())),
                                _ => self
                                    .universe
                                    .contains(&Formula::tensor((*x).clone(), (*y).clone())),
                            };
                            if keep {
                                out.push(GateType { kind, params: pair });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn admits(&self, g: &GateType) -> bool {
        self.gate_families().contains(&g.kind)
    }

    /// Checks that every gate of `d` belongs to the signature.
    pub fn check_diagram(&self, d: &Diagram) -> Result<(), RewriteError> {
        d.validate()?;
        match d.gates().find(|g| !self.admits(&g.gate)) {
            Some(g) => Err(RewriteError::ForeignGate(g.gate.to_string())),
            None => Ok(()),
        }
    }

    /// Labels that may cross: every logical label.
    pub fn is_twisting_label(&self, l: &Label) -> bool {
        l.is_twisting()
    }

    pub fn rule(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn twisting_rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(|r| r.family.is_twisting())
    }

    pub fn cut_rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(|r| !r.family.is_twisting())
    }
}
