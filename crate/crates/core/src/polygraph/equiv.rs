//! Equivalence of diagrams under the twisting relations.
//!
//! The search runs breadth-first from both diagrams at once, using every
//! twisting rule in both orientations. Reversing the crossing involution
//! would insert a crossing pair anywhere, so that orientation is left out,
//! and states are limited to two gates more than the larger input. Within
//! that space the answer `No` is exact; outside it nothing is claimed.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::diagram::Diagram;

use super::matching::{apply_unchecked, Host};
use super::rewrite::redexes_of;
use super::{Polygraph, RewriteError, RewriteRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equivalence {
    Yes,
    No,
    Unknown,
}

/// The twisting rules of `p` in both orientations.
pub fn bidirectional_rules(p: &Polygraph) -> Vec<RewriteRule> {
    let mut out: Vec<RewriteRule> = p.twisting_rules().cloned().collect();
    out.extend(p.twisting_rules().filter_map(RewriteRule::reversed));
    out
}

/// Decides whether `a` and `b` are related by the twisting relations,
/// expanding at most `budget` diagrams.
pub fn twist_equivalent(a: &Diagram, b: &Diagram, p: &Polygraph, budget: usize) -> Result<Equivalence, RewriteError> {
    if a.input() != b.input() || a.output() != b.output() {
        return Ok(Equivalence::No);
    }
    let (ca, cb) = (a.canonical_form(), b.canonical_form());
    if ca == cb {
        return Ok(Equivalence::Yes);
    }
    let rules = bidirectional_rules(p);
    let bound = a.gate_count(None).max(b.gate_count(None)) + 2;
    let mut seen = [HashSet::from([ca.clone()]), HashSet::from([cb.clone()])];
    let mut queues = [VecDeque::from([ca]), VecDeque::from([cb])];
    let mut spent = 0;
    while !(queues[0].is_empty() && queues[1].is_empty()) {
        // expand the smaller non-empty frontier
        let side = match (queues[0].len(), queues[1].len()) {
            (0, _) => 1,
            (_, 0) => 0,
            (x, y) => usize::from(y < x),
        };
        let d = queues[side].pop_front().unwrap();
        if spent == budget {
            return Ok(Equivalence::Unknown);
        }
        spent += 1;
        for m in redexes_of(&Host::new(&d), &rules, false) {
            let s = apply_unchecked(&m)?;
            if s.gate_count(None) > bound {
                continue;
            }
            if seen[1 - side].contains(&s) {
                return Ok(Equivalence::Yes);
            }
            if seen[side].insert(s.clone()) {
                queues[side].push_back(s);
            }
        }
    }
    Ok(Equivalence::No)
}
