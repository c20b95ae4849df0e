//! Matching rule templates modulo interchange.
//!
//! A match is grown from an anchor gate of the diagram that has the kind of
//! the template's first gate, following the template's internal wires. The
//! gate set found this way is then pulled together by interchange moves
//! ([`extract`]) and compared with the instantiated template.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{Cell, Diagram, GateType, Label, Step};
use crate::formula::Formula;
use crate::sequential::{extract, Context, PortGraph, Source, Target};

use super::{RewriteError, RewriteRule};

/// An occurrence of a rule's left-hand side inside a diagram.
#[derive(Clone, Debug)]
pub struct Match {
    pub rule: String,
    /// `(layer, offset)` of the anchor gate in the matched diagram.
    pub anchor: (usize, usize),
    /// Step indices of the matched gates.
    pub gates: BTreeSet<usize>,
    pub context: Context,
    /// Left- and right-hand sides with metavariables instantiated.
    pub lhs: Diagram,
    pub rhs: Diagram,
}

pub(crate) type Binding = BTreeMap<String, Formula>;

fn bind(b: &mut Binding, name: &str, value: Formula) -> bool {
    match b.get(name) {
        Some(v) => *v == value,
        None => {
            b.insert(name.to_string(), value);
            true
        }
    }
}

pub(crate) fn unify(pattern: &Formula, concrete: &Formula, b: &mut Binding) -> bool {
    match (pattern, concrete) {
        (Formula::Atom(x), _) if Formula::is_metavar_name(x) => bind(b, x, concrete.clone()),
        (Formula::DualAtom(x), _) if Formula::is_metavar_name(x) => bind(b, x, concrete.dual()),
        (Formula::Tensor(p1, p2), Formula::Tensor(c1, c2))
        | (Formula::Par(p1, p2), Formula::Par(c1, c2)) => unify(p1, c1, b) && unify(p2, c2, b),
        _ => pattern == concrete,
    }
}

pub(crate) fn substitute(f: &Formula, b: &Binding) -> Formula {
    match f {
        Formula::Atom(x) if Formula::is_metavar_name(x) => b[x].clone(),
        Formula::DualAtom(x) if Formula::is_metavar_name(x) => b[x].dual(),
        Formula::Tensor(x, y) => Formula::tensor(substitute(x, b), substitute(y, b)),
        Formula::Par(x, y) => Formula::par(substitute(x, b), substitute(y, b)),
        other => other.clone(),
    }
}

fn substitute_label(l: &Label, b: &Binding) -> Label {
    match l {
        Label::Logical(f) => Label::Logical(substitute(f, b)),
        other => other.clone(),
    }
}

pub(crate) fn instantiate_diagram(d: &Diagram, b: &Binding) -> Diagram {
    let input = d.input().iter().map(|l| substitute_label(l, b)).collect();
    let layers = d
        .layers()
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|c| match c {
                    Cell::Wire(l) => Cell::Wire(substitute_label(l, b)),
                    Cell::Gate(g) => Cell::Gate(GateType {
                        kind: g.kind,
                        params: g.params.iter().map(|p| substitute(p, b)).collect(),
                    }),
                })
                .collect()
        })
        .collect();
    Diagram::from_layers(input, layers).expect("instantiation preserves typing")
}

/// Precomputed data of the diagram being searched.
pub(crate) struct Host {
    pub input: Vec<Label>,
    pub steps: Vec<Step>,
    pub graph: PortGraph,
    pub anchors: Vec<(usize, usize)>,
    pub diagram: Diagram,
}

impl Host {
    pub(crate) fn new(d: &Diagram) -> Host {
        let steps = d.steps();
        let graph = PortGraph::from_steps(d.input().len(), steps.clone());
        let anchors = d.gates().map(|g| (g.layer, g.offset)).collect();
        Host { input: d.input().clone(), steps, graph, anchors, diagram: d.clone() }
    }
}

/// Maps template gates to host gates starting from `anchor`, following the
/// template's internal wires.
fn grow(pattern: &PortGraph, host: &PortGraph, anchor: usize) -> Option<Vec<usize>> {
    let n = pattern.len();
    let mut map: Vec<Option<usize>> = vec![None; n];
    map[0] = Some(anchor);
    let mut stack = vec![0usize];
    let assign = |map: &mut Vec<Option<usize>>, stack: &mut Vec<usize>, p: usize, h: usize| {
        if pattern.steps[p].gate.kind != host.steps[h].gate.kind {
            return false;
        }
        match map[p] {
            Some(x) => x == h,
            None => {
                map[p] = Some(h);
                stack.push(p);
                true
            }
        }
    };
    while let Some(p) = stack.pop() {
        let h = map[p].unwrap();
        for (port, t) in pattern.outputs[p].iter().enumerate() {
            if let Target::Port { gate: pg, port: pq } = *t {
                match host.outputs[h][port] {
                    Target::Port { gate: hg, port: hq } if hq == pq => {
                        if !assign(&mut map, &mut stack, pg, hg) {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }
        for (port, s) in pattern.inputs[p].iter().enumerate() {
            if let Source::Port { gate: pg, port: pq } = *s {
                match host.inputs[h][port] {
                    Source::Port { gate: hg, port: hq } if hq == pq => {
                        if !assign(&mut map, &mut stack, pg, hg) {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }
    }
    map.into_iter().collect()
}

pub(crate) fn match_rule_in(host: &Host, rule: &RewriteRule) -> Vec<Match> {
    let pattern = PortGraph::new(&rule.lhs);
    if pattern.is_empty() {
        return vec![];
    }
    let kind0 = pattern.steps[0].gate.kind;
    let mut out = Vec::new();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for (i, s) in host.steps.iter().enumerate() {
        if s.gate.kind != kind0 {
            continue;
        }
        let Some(map) = grow(&pattern, &host.graph, i) else { continue };
        let gates: BTreeSet<usize> = map.iter().copied().collect();
        if gates.len() != map.len() || seen.contains(&gates) {
            continue;
        }
        let mut b = Binding::new();
        let unified = map.iter().enumerate().all(|(p, &h)| {
            let pp = &pattern.steps[p].gate.params;
            let hp = &host.steps[h].gate.params;
            pp.iter().zip(hp).all(|(x, y)| unify(x, y, &mut b))
        });
        if !unified {
            continue;
        }
        let Some(context) = extract(&host.input, &host.steps, &gates) else { continue };
        // variables that only label wires are fixed by the block's boundary
        let (bi, bo) = (context.block.input(), context.block.output());
        let (pi, po) = (rule.lhs.input(), rule.lhs.output());
        if pi.len() != bi.len() || po.len() != bo.len() {
            continue;
        }
        let boundary = pi.iter().zip(bi.iter()).chain(po.iter().zip(bo.iter())).all(|(x, y)| match (x, y) {
            (Label::Logical(x), Label::Logical(y)) => unify(x, y, &mut b),
            _ => x == y,
        });
        if !boundary {
            continue;
        }
        let lhs = instantiate_diagram(&rule.lhs, &b);
        if context.block.canonical_form() != lhs {
            continue;
        }
        let rhs = instantiate_diagram(&rule.rhs, &b);
        seen.insert(gates.clone());
        out.push(Match {
            rule: rule.name.clone(),
            anchor: host.anchors[i],
            gates,
            context,
            lhs,
            rhs,
        });
    }
    out
}

/// All occurrences of `rule`'s left-hand side in `d`, modulo interchange.
pub fn find_redexes(d: &Diagram, rule: &RewriteRule) -> Vec<Match> {
    match_rule_in(&Host::new(d), rule)
}

/// Replaces the matched left-hand side by the right-hand side. The result is
/// returned in canonical form.
pub fn apply(d: &Diagram, m: &Match) -> Result<Diagram, RewriteError> {
    let stale = || RewriteError::StaleMatch { rule: m.rule.clone() };
    let before = m.context.recompose(&m.lhs).map_err(|_| stale())?;
    if !before.equal_mod_interchange(d) {
        return Err(stale());
    }
    apply_unchecked(m)
}

pub(crate) fn apply_unchecked(m: &Match) -> Result<Diagram, RewriteError> {
    Ok(m.context.recompose(&m.rhs)?.canonical_form())
}

/// Applies `rule` at the redex whose anchor gate sits at `anchor`.
pub fn apply_at(d: &Diagram, rule: &RewriteRule, anchor: (usize, usize)) -> Result<Diagram, RewriteError> {
    find_redexes(d, rule)
        .into_iter()
        .find(|m| m.anchor == anchor)
        .ok_or(RewriteError::NoRedexAt { rule: rule.name.clone(), layer: anchor.0, offset: anchor.1 })
        .and_then(|m| apply_unchecked(&m))
}
