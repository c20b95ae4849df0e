//! Cut steps performed on the wiring rather than on the layout.
//!
//! Crossings only route wires, so a cut can face its partner gate through
//! any arrangement of swaps, including ones where the two gates cannot be
//! gathered into a contiguous block. Here the cut and its partners are
//! removed from the wiring graph, the reduct's gates are laid out again in
//! their original order, and crossings are inserted wherever a gate's inputs
//! are not adjacent. The result is twisting-equivalent to applying the
//! template rule after the right slides.

use std::collections::{BTreeSet, HashMap};

use crate::diagram::{Diagram, GateKind, GateType, Label, Step, Word};
use crate::perm::{canonical_perm_diagram, Permutation};
use crate::sequential::{Context, Source};

use super::cut::AX_CUT;
use super::matching::{Host, Match};

/// A gate of the rewired net with its input wires.
struct Node {
    id: usize,
    gate: GateType,
    inputs: Vec<Source>,
    /// Where zero-input gates are inserted.
    hint: usize,
}

/// Wires entering each step and leaving the diagram, with swaps seen through.
fn wiring(host: &Host) -> (Vec<Vec<Source>>, Vec<Source>) {
    let mut word: Vec<Source> = (0..host.input.len()).map(Source::Input).collect();
    let mut ins = Vec::with_capacity(host.steps.len());
    for (i, s) in host.steps.iter().enumerate() {
        let (o, d) = (s.offset, s.gate.dom_len());
        ins.push(word[o..o + d].to_vec());
        if s.gate.kind == GateKind::Swap {
            word.swap(o, o + 1);
        } else {
            let outs = (0..s.gate.cod_len()).map(|port| Source::Port { gate: i, port });
            word.splice(o..o + d, outs);
        }
    }
    (ins, word)
}

fn kind(host: &Host, s: Source) -> Option<(usize, usize, GateKind)> {
    match s {
        Source::Port { gate, port } => Some((gate, port, host.steps[gate].gate.kind)),
        Source::Input(_) => None,
    }
}

/// The net after reducing cut `c`: its surviving nodes in layout order and
/// the substitution for wires whose source disappeared.
fn reduce(host: &Host, ins: &[Vec<Source>], c: usize) -> Option<(&'static str, Vec<Node>, HashMap<Source, Source>)> {
    let (s0, s1) = (ins[c][0], ins[c][1]);
    let mut removed = BTreeSet::from([c]);
    let mut subst = HashMap::new();
    let mut fresh = Vec::new();
    let rule = match (kind(host, s0), kind(host, s1)) {
        (Some((x, _, GateKind::Par)), Some((y, _, GateKind::Tensor)))
        | (Some((x, _, GateKind::Tensor)), Some((y, _, GateKind::Par))) => {
            let g = &host.steps[x].gate;
            removed.extend([x, y]);
            fresh.push((GateType::cut(g.params[1].clone()), vec![ins[x][1], ins[y][0]]));
            fresh.push((GateType::cut(g.params[0].clone()), vec![ins[x][0], ins[y][1]]));
            if g.kind == GateKind::Par {
                "cut_par_tensor"
            } else {
                "cut_tensor_par"
            }
        }
        (Some((x, _, GateKind::Bot)), Some((y, _, GateKind::One))) => {
            removed.extend([x, y]);
            "cut_bot_one"
        }
        (Some((x, _, GateKind::One)), Some((y, _, GateKind::Bot))) => {
            removed.extend([x, y]);
            "cut_one_bot"
        }
        _ => {
            let (ax, r, other) = match (kind(host, s0), kind(host, s1)) {
                (Some((ax, r, GateKind::Ax)), _) => (ax, r, s1),
                (_, Some((ax, r, GateKind::Ax))) => (ax, r, s0),
                _ => return None,
            };
            let free = Source::Port { gate: ax, port: 1 - r };
            if other == free {
                return None;
            }
            removed.insert(ax);
            subst.insert(free, other);
            AX_CUT
        }
    };
    let mut nodes = Vec::new();
    for (i, s) in host.steps.iter().enumerate() {
        if i == c {
            let base = host.steps.len();
            for (k, (gate, inputs)) in fresh.drain(..).enumerate() {
                nodes.push(Node { id: base + k, gate, inputs, hint: 0 });
            }
        } else if s.gate.kind != GateKind::Swap && !removed.contains(&i) {
            nodes.push(Node { id: i, gate: s.gate.clone(), inputs: ins[i].clone(), hint: s.offset });
        }
    }
    Some((rule, nodes, subst))
}

fn resolve(subst: &HashMap<Source, Source>, mut s: Source) -> Source {
    while let Some(&t) = subst.get(&s) {
        s = t;
    }
    s
}

/// Appends the crossings taking `cur` to `target` (same wires, new order).
fn route(steps: &mut Vec<Step>, cur: &mut Vec<Source>, labels: &mut Word, target: &[Source]) -> Option<()> {
    let pos: HashMap<Source, usize> = target.iter().enumerate().map(|(i, s)| (*s, i + 1)).collect();
    let images = cur.iter().map(|s| pos.get(s).copied()).collect::<Option<Vec<_>>>()?;
    let sigma = Permutation::new(images).ok()?;
    if !sigma.is_identity() {
        let d = canonical_perm_diagram(&sigma, labels).ok()?;
        steps.extend(d.steps());
        *labels = d.output();
        *cur = target.to_vec();
    }
    Some(())
}

/// Lays out the reduct of cut `c` over the same boundary as the host.
fn relayout(host: &Host, c: usize) -> Option<(&'static str, Diagram)> {
    let (ins, outs) = wiring(host);
    let (rule, nodes, subst) = reduce(host, &ins, c)?;
    let mut cur: Vec<Source> = (0..host.input.len()).map(Source::Input).collect();
    let mut labels = host.input.clone();
    let mut steps = Vec::new();
    for node in nodes {
        let srcs: Vec<Source> = node.inputs.iter().map(|s| resolve(&subst, *s)).collect();
        let at = if srcs.is_empty() {
            node.hint.min(cur.len())
        } else {
            let first = cur.iter().position(|s| *s == srcs[0])?;
            let before = cur[..first].iter().filter(|s| !srcs.contains(s)).count();
            let mut target: Vec<Source> = cur.iter().filter(|s| !srcs.contains(s)).copied().collect();
            target.splice(before..before, srcs.iter().copied());
            route(&mut steps, &mut cur, &mut labels, &target)?;
            before
        };
        let k = srcs.len();
        steps.push(Step { offset: at, gate: node.gate.clone() });
        cur.splice(at..at + k, (0..node.gate.cod_len()).map(|port| Source::Port { gate: node.id, port }));
        labels.splice(at..at + k, node.gate.codomain());
    }
    let target: Vec<Source> = outs.iter().map(|s| resolve(&subst, *s)).collect();
    if cur.len() != target.len() {
        return None;
    }
    route(&mut steps, &mut cur, &mut labels, &target)?;
    let d = Diagram::from_steps(host.input.clone(), &steps).ok()?;
    Some((rule, d.canonical_form()))
}

/// One whole-diagram redex per cut that faces an axiom, a matching
/// connective or a matching unit through crossings.
pub(crate) fn rewired_cuts_in(host: &Host) -> Vec<Match> {
    let whole = &host.diagram;
    let output = whole.output();
    let mut out = Vec::new();
    for c in 0..host.steps.len() {
        if host.steps[c].gate.kind != GateKind::Cut {
            continue;
        }
        let Some((rule, rhs)) = relayout(host, c) else { continue };
        if rhs.output() != output {
            continue;
        }
        out.push(Match {
            rule: rule.to_string(),
            anchor: host.anchors[c],
            gates: (0..host.steps.len()).collect(),
            context: Context {
                lower: Diagram::identity(host.input.clone()),
                gamma: Vec::<Label>::new(),
                block: whole.clone(),
                delta: Vec::new(),
                upper: Diagram::identity(output.clone()),
            },
            lhs: whole.clone(),
            rhs,
        });
    }
    out
}
