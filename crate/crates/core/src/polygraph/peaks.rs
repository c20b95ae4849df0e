//! Critical peaks of the permutation polygraph and a joinability check.

use std::collections::{HashSet, VecDeque};

use crate::diagram::{logical_word, Diagram, GateType, Step};
use crate::formula::Formula;

use super::matching::{apply, apply_unchecked, Host, Match};
use super::rewrite::redexes_of;
use super::{instantiate, Polygraph, PolygraphName, RewriteError};

/// A diagram with two overlapping redexes.
#[derive(Clone, Debug)]
pub struct Peak {
    pub diagram: Diagram,
    pub first: Match,
    pub second: Match,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Joinability {
    Joinable,
    NotJoinable,
    /// The budget ran out first.
    Unknown,
}

/// Builds a twisting diagram from swap offsets over distinct atoms.
pub fn swap_diagram(n_wires: usize, layers: &[&[usize]]) -> Diagram {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let input = logical_word(&names[..n_wires].iter().map(|n| Formula::atom(n)).collect::<Vec<_>>());
    let mut word = input.clone();
    let mut steps = Vec::new();
    for layer in layers {
        for &o in layer.iter() {
            let (x, y) = (word[o].formula().unwrap().clone(), word[o + 1].formula().unwrap().clone());
            steps.push(Step { offset: o, gate: GateType::swap(x, y) });
        }
        for &o in layer.iter() {
            word.swap(o, o + 1);
        }
    }
    Diagram::from_steps(input, &steps).expect("swaps on logical wires").canonical_form()
}

/// The five critical peaks of the permutation polygraph, each with its
/// first pair of overlapping redexes.
pub fn critical_peaks_s() -> Vec<Peak> {
    let p = instantiate(PolygraphName::S, &[]).expect("empty universe is closed");
    let shapes: [(usize, &[&[usize]]); 5] = [
        (2, &[&[0], &[0], &[0]]),
        (3, &[&[0], &[0], &[1], &[0]]),
        (3, &[&[0], &[1], &[0], &[0]]),
        (3, &[&[0], &[1], &[0], &[1], &[0]]),
        (4, &[&[0], &[1], &[0, 2], &[1], &[0]]),
    ];
    shapes
        .iter()
        .map(|(n, layers)| {
            let d = swap_diagram(*n, layers);
            let ms = redexes_of(&Host::new(&d), &p.rules, false);
            let (first, second) = overlapping_pairs(&ms).into_iter().next().expect("a critical overlap");
            Peak { diagram: d, first: first.clone(), second: second.clone() }
        })
        .collect()
}

/// Pairs of distinct redexes sharing at least one gate.
pub fn overlapping_pairs(ms: &[Match]) -> Vec<(&Match, &Match)> {
    let mut out = Vec::new();
    for (i, x) in ms.iter().enumerate() {
        for y in &ms[i + 1..] {
            if x.gates != y.gates && !x.gates.is_disjoint(&y.gates) {
                out.push((x, y));
            }
        }
    }
    out
}

fn successors(d: &Diagram, p: &Polygraph) -> Result<Vec<Diagram>, RewriteError> {
    redexes_of(&Host::new(d), &p.rules, p.ax_cut).iter().map(apply_unchecked).collect()
}

/// Rewrites both one-step reducts of the peak breadth-first and reports
/// whether their reachable sets meet. `budget` bounds the number of
/// diagrams expanded.
pub fn check_joinable(
    peak: &Diagram,
    m1: &Match,
    m2: &Match,
    p: &Polygraph,
    budget: usize,
) -> Result<Joinability, RewriteError> {
    let r1 = apply(peak, m1)?;
    let r2 = apply(peak, m2)?;
    if r1 == r2 {
        return Ok(Joinability::Joinable);
    }
    let mut seen = [HashSet::from([r1.clone()]), HashSet::from([r2.clone()])];
    let mut queues = [VecDeque::from([r1]), VecDeque::from([r2])];
    let mut spent = 0;
    while !(queues[0].is_empty() && queues[1].is_empty()) {
        for side in 0..2 {
            let Some(d) = queues[side].pop_front() else { continue };
            if spent == budget {
                return Ok(Joinability::Unknown);
            }
            spent += 1;
            for s in successors(&d, p)? {
                if seen[1 - side].contains(&s) {
                    return Ok(Joinability::Joinable);
                }
                if seen[side].insert(s.clone()) {
                    queues[side].push_back(s);
                }
            }
        }
    }
    Ok(Joinability::NotJoinable)
}
