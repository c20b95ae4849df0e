//! Cut elimination for the plain polygraphs.
//!
//! Besides the template rules, an axiom whose output reaches a cut through
//! crossings only is yanked away: the gates in between collapse to the
//! canonical permutation diagram of the rerouted wires. This family has one
//! member per permutation, so it is instantiated when a redex is found.

use std::collections::BTreeSet;

use crate::diagram::{Diagram, GateKind};
use crate::perm::{canonical_perm_diagram, Permutation};
use crate::sequential::{extract, PortGraph, Source, Target};

use super::matching::{Host, Match};
use super::rewire::rewired_cuts_in;
use super::rewrite::{redexes_of, rewrite_loop, NormalizeOutcome, Strategy};
use super::{Polygraph, RewriteError};

pub const AX_CUT: &str = "ax_cut";

/// Follows a wire downwards through crossings. Returns the swaps passed and
/// the source reached.
fn descend(g: &PortGraph, mut src: Source, path: &mut Vec<usize>) -> Source {
    while let Source::Port { gate, port } = src {
        if g.steps[gate].gate.kind != GateKind::Swap {
            break;
        }
        path.push(gate);
        src = g.inputs[gate][1 - port];
    }
    src
}

fn kind_at(g: &PortGraph, s: Source) -> Option<(usize, usize, GateKind)> {
    match s {
        Source::Port { gate, port } => Some((gate, port, g.steps[gate].gate.kind)),
        Source::Input(_) => None,
    }
}

/// Input-to-output routing of a block made of one axiom, one cut and
/// crossings, once the axiom-cut pair is straightened out.
fn yank(block: &Diagram) -> Option<Permutation> {
    let g = PortGraph::new(block);
    let cut = (0..g.len()).find(|&i| g.steps[i].gate.kind == GateKind::Cut)?;
    let n = block.input().len();
    let limit = 4 * (g.len() + n + 2);
    let mut images = Vec::with_capacity(n);
    for j in 0..n {
        let mut t = g.input_targets[j];
        let mut fuel = limit;
        let k = loop {
            fuel = fuel.checked_sub(1)?;
            match t {
                Target::Output(k) => break k,
                Target::Port { gate, port } => match g.steps[gate].gate.kind {
                    GateKind::Swap => t = g.outputs[gate][1 - port],
                    GateKind::Cut if gate == cut => {
                        let mut path = Vec::new();
                        let (ax, r, kind) = kind_at(&g, descend(&g, g.inputs[cut][1 - port], &mut path))?;
                        if kind != GateKind::Ax {
                            return None;
                        }
                        t = g.outputs[ax][1 - r];
                    }
                    _ => return None,
                },
            }
        };
        images.push(k + 1);
    }
    Permutation::new(images).ok()
}

pub(crate) fn ax_cut_in(host: &Host) -> Vec<Match> {
    let g = &host.graph;
    let mut out = Vec::new();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for c in 0..g.len() {
        if g.steps[c].gate.kind != GateKind::Cut {
            continue;
        }
        for port in 0..2 {
            let mut path = Vec::new();
            let Some((ax, _, GateKind::Ax)) = kind_at(g, descend(g, g.inputs[c][port], &mut path)) else {
                continue;
            };
            // Both cut inputs coming from the same axiom would close a loop.
            let mut other = Vec::new();
            if let Some((x, _, GateKind::Ax)) = kind_at(g, descend(g, g.inputs[c][1 - port], &mut other)) {
                if x == ax {
                    continue;
                }
            }
            let mut gates: BTreeSet<usize> = path.into_iter().collect();
            gates.insert(ax);
            gates.insert(c);
            if !seen.insert(gates.clone()) {
                continue;
            }
            let Some(context) = extract(&host.input, &host.steps, &gates) else { continue };
            let Some(pi) = yank(&context.block) else { continue };
            let Ok(rhs) = canonical_perm_diagram(&pi, context.block.input()) else { continue };
            if rhs.output() != context.block.output() {
                continue;
            }
            out.push(Match {
                rule: AX_CUT.to_string(),
                anchor: host.anchors[c],
                gates,
                lhs: context.block.canonical_form(),
                rhs: rhs.canonical_form(),
                context,
            });
        }
    }
    out
}

/// Redexes of the axiom-cut family in `d`.
pub fn find_ax_cut_redexes(d: &Diagram) -> Vec<Match> {
    ax_cut_in(&Host::new(d))
}

/// Removes cuts: a cut redex is reduced whenever one exists, otherwise one
/// twisting step (in its forward orientation) is taken to expose one. When
/// neither applies, a cut facing its partner through crossings is reduced
/// on the wiring and the diagram laid out again. Stops
/// as soon as the diagram is cut-free, when nothing applies, or when the
/// budget is spent (`exhausted`).
pub fn cut_eliminate(d: &Diagram, p: &Polygraph, budget: usize) -> Result<NormalizeOutcome, RewriteError> {
    if p.cut_rules().next().is_none() {
        return Err(RewriteError::NoCutRules(p.name.to_string()));
    }
    let cuts = [GateKind::Cut];
    rewrite_loop(
        d,
        budget,
        Strategy::LeftmostInnermost,
        |h| {
            let mut ms = redexes_of(h, p.cut_rules(), p.ax_cut);
            if ms.is_empty() {
                ms = redexes_of(h, p.twisting_rules(), false);
            }
            if ms.is_empty() {
                ms = rewired_cuts_in(h);
            }
            ms
        },
        |x| x.gate_count(Some(&cuts)) == 0,
    )
}
