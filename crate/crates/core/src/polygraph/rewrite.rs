//! Normalization and trace replay.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;

use super::cut::{ax_cut_in, AX_CUT};
use super::matching::{apply_unchecked, match_rule_in, Host, Match};
use super::rewire::rewired_cuts_in;
use super::{Polygraph, RewriteError, RewriteRule};

/// How the next redex is picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The redex whose anchor is lowest, then leftmost.
    LeftmostInnermost,
    /// A uniformly random redex, from a seeded generator.
    Random(u64),
}

/// One rewrite step: the rule and the `[layer, offset]` of its anchor gate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: String,
    pub anchor: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct NormalizeOutcome {
    pub diagram: Diagram,
    pub trace: Vec<TraceEntry>,
    /// True when the budget ran out while redexes remained.
    pub exhausted: bool,
}

pub(crate) fn redexes_of<'a>(
    host: &Host,
    rules: impl IntoIterator<Item = &'a RewriteRule>,
    ax_cut: bool,
) -> Vec<Match> {
    let mut out: Vec<Match> = Vec::new();
    for r in rules {
        out.extend(match_rule_in(host, r));
    }
    if ax_cut {
        out.extend(ax_cut_in(host));
    }
    // stable: rule order breaks ties between equal anchors
    out.sort_by_key(|m| m.anchor);
    out
}

/// Every redex of every rule of `p` in `d`, ordered by anchor.
pub fn all_redexes(d: &Diagram, p: &Polygraph) -> Vec<Match> {
    redexes_of(&Host::new(d), &p.rules, p.ax_cut)
}

pub(crate) struct Picker {
    rng: Option<ChaCha8Rng>,
}

impl Picker {
    pub(crate) fn new(strategy: Strategy) -> Picker {
        Picker {
            rng: match strategy {
                Strategy::LeftmostInnermost => None,
                Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        }
    }

    pub(crate) fn pick<'m>(&mut self, ms: &'m [Match]) -> &'m Match {
        match &mut self.rng {
            None => &ms[0],
            Some(r) => &ms[r.gen_range(0..ms.len())],
        }
    }
}

pub(crate) fn rewrite_loop(
    d: &Diagram,
    budget: usize,
    strategy: Strategy,
    mut next: impl FnMut(&Host) -> Vec<Match>,
    done: impl Fn(&Diagram) -> bool,
) -> Result<NormalizeOutcome, RewriteError> {
    let mut cur = d.canonical_form();
    let mut trace = Vec::new();
    let mut picker = Picker::new(strategy);
    loop {
        if done(&cur) {
            return Ok(NormalizeOutcome { diagram: cur, trace, exhausted: false });
        }
        let ms = next(&Host::new(&cur));
        if ms.is_empty() {
            return Ok(NormalizeOutcome { diagram: cur, trace, exhausted: false });
        }
        if trace.len() >= budget {
            return Ok(NormalizeOutcome { diagram: cur, trace, exhausted: true });
        }
        let m = picker.pick(&ms);
        trace.push(TraceEntry { rule: m.rule.clone(), anchor: m.anchor });
        cur = apply_unchecked(m)?;
    }
}

/// Rewrites `d` with the rules of `p` until no redex is left or `budget`
/// steps were taken. The input is first put in canonical form; trace anchors
/// refer to the canonical diagram current at each step.
pub fn normalize(
    d: &Diagram,
    p: &Polygraph,
    budget: usize,
    strategy: Strategy,
) -> Result<NormalizeOutcome, RewriteError> {
    rewrite_loop(d, budget, strategy, |h| redexes_of(h, &p.rules, p.ax_cut), |_| false)
}

/// Replays a trace produced by [`normalize`] or [`super::cut_eliminate`].
pub fn replay(d: &Diagram, p: &Polygraph, trace: &[TraceEntry]) -> Result<Diagram, RewriteError> {
    let mut cur = d.canonical_form();
    for e in trace {
        let host = Host::new(&cur);
        let ms = if e.rule == AX_CUT && p.ax_cut {
            ax_cut_in(&host)
        } else {
            let r = p.rule(&e.rule).ok_or_else(|| RewriteError::UnknownRule(e.rule.clone()))?;
            match_rule_in(&host, r)
        };
        let found = ms.into_iter().find(|m| m.anchor == e.anchor).or_else(|| {
            // steps taken on the wiring carry the name of the rule they stand for
            let cut_step = e.rule == AX_CUT || p.cut_rules().any(|r| r.name == e.rule);
            let rewired = if cut_step { rewired_cuts_in(&host) } else { Vec::new() };
            rewired.into_iter().find(|m| m.anchor == e.anchor && m.rule == e.rule)
        });
        let m = found.ok_or(RewriteError::NoRedexAt {
            rule: e.rule.clone(),
            layer: e.anchor.0,
            offset: e.anchor.1,
        })?;
        cur = apply_unchecked(&m)?;
    }
    Ok(cur)
}
