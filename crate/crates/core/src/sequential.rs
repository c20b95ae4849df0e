//! Gate-by-gate view of diagrams: wire connectivity, interchange moves on
//! adjacent steps, and extraction of a set of gates as a contiguous
//! subdiagram `psi_d o (id_G * block * id_D) o psi_u`.

use std::collections::BTreeSet;

use crate::diagram::{Diagram, DiagramError, GateRef, Label, Step, Word};

/// Where a wire comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Input(usize),
    Port { gate: usize, port: usize },
}

/// Where a wire goes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Output(usize),
    Port { gate: usize, port: usize },
}

/// Connectivity of a diagram's gates, indexed in step order.
#[derive(Clone, Debug)]
pub struct PortGraph {
    pub steps: Vec<Step>,
    pub inputs: Vec<Vec<Source>>,
    pub outputs: Vec<Vec<Target>>,
    pub input_targets: Vec<Target>,
}

impl PortGraph {
    pub fn new(d: &Diagram) -> PortGraph {
        Self::from_steps(d.input().len(), d.steps())
    }

    pub fn from_steps(n_inputs: usize, steps: Vec<Step>) -> PortGraph {
        let mut word: Vec<Source> = (0..n_inputs).map(Source::Input).collect();
        let mut inputs = Vec::with_capacity(steps.len());
        let mut outputs: Vec<Vec<Target>> = Vec::with_capacity(steps.len());
        let mut input_targets = vec![Target::Output(usize::MAX); n_inputs];
        for (id, s) in steps.iter().enumerate() {
            let d = s.gate.dom_len();
            let srcs: Vec<Source> = word[s.offset..s.offset + d].to_vec();
            for (port, src) in srcs.iter().enumerate() {
                let t = Target::Port { gate: id, port };
                match *src {
                    Source::Input(i) => input_targets[i] = t,
                    Source::Port { gate, port: p } => outputs[gate][p] = t,
                }
            }
            inputs.push(srcs);
            outputs.push(vec![Target::Output(usize::MAX); s.gate.cod_len()]);
            let new: Vec<Source> = (0..s.gate.cod_len())
                .map(|port| Source::Port { gate: id, port })
                .collect();
            word.splice(s.offset..s.offset + d, new);
        }
        for (j, src) in word.iter().enumerate() {
            match *src {
                Source::Input(i) => input_targets[i] = Target::Output(j),
                Source::Port { gate, port } => outputs[gate][port] = Target::Output(j),
            }
        }
        PortGraph { steps, inputs, outputs, input_targets }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Undirected connected components over gates; diagram inputs are not nodes.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (g, srcs) in self.inputs.iter().enumerate() {
            for s in srcs {
                if let Source::Port { gate, .. } = *s {
                    let (a, b) = (find(&mut parent, g), find(&mut parent, gate));
                    parent[a] = b;
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    /// Gate-ids of the (strict) descendants of `g`.
    pub fn descendants(&self, g: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![g];
        while let Some(x) = stack.pop() {
            for t in &self.outputs[x] {
                if let Target::Port { gate, .. } = *t {
                    if seen.insert(gate) {
                        stack.push(gate);
                    }
                }
            }
        }
        seen
    }

    pub fn ancestors(&self, g: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![g];
        while let Some(x) = stack.pop() {
            for s in &self.inputs[x] {
                if let Source::Port { gate, .. } = *s {
                    if seen.insert(gate) {
                        stack.push(gate);
                    }
                }
            }
        }
        seen
    }
}

/// Exchanges two adjacent independent steps, `a` applied first. Returns the
/// pair in the new order, or `None` when `b` depends on `a`.
pub fn commute(a: &Step, b: &Step) -> Option<(Step, Step)> {
    let (d1, c1) = (a.gate.dom_len(), a.gate.cod_len());
    let (d2, c2) = (b.gate.dom_len(), b.gate.cod_len());
    let (o1, o2) = (a.offset, b.offset);
    if o2 + d2 <= o1 {
        Some((
            Step { offset: o2, gate: b.gate.clone() },
            Step { offset: o1 + c2 - d2, gate: a.gate.clone() },
        ))
    } else if o2 >= o1 + c1 {
        Some((
            Step { offset: o2 + d1 - c1, gate: b.gate.clone() },
            Step { offset: o1, gate: a.gate.clone() },
        ))
    } else {
        None
    }
}

/// A decomposition `psi_d o (id_gamma * block * id_delta) o psi_u`.
#[derive(Clone, Debug)]
pub struct Context {
    pub lower: Diagram,
    pub gamma: Word,
    pub block: Diagram,
    pub delta: Word,
    pub upper: Diagram,
}

impl Context {
    pub fn recompose(&self, middle: &Diagram) -> Result<Diagram, DiagramError> {
        let mid = middle.whisker(&self.gamma, &self.delta);
        let d = Diagram::compose_seq(&self.lower, &mid)?;
        Diagram::compose_seq(&d, &self.upper)
    }
}

/// Reorders `steps` by interchange so that the gates `selected` (indices into
/// `steps`) are consecutive, then cuts out the smallest wire interval they
/// touch. Fails when the selection is not convex or not contiguous.
pub fn extract(input: &Word, steps: &[Step], selected: &BTreeSet<usize>) -> Option<Context> {
    let mut seq: Vec<(u8, Step)> = steps
        .iter()
        .enumerate()
        .map(|(i, s)| (u8::from(selected.contains(&i)), s.clone()))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..seq.len().saturating_sub(1) {
            let (ka, kb) = (seq[i].0, seq[i + 1].0);
            if ka <= kb {
                continue;
            }
            match commute(&seq[i].1, &seq[i + 1].1) {
                Some((b, a)) => {
                    seq[i] = (kb, b);
                    seq[i + 1] = (ka, a);
                    changed = true;
                }
                None => match (ka, kb) {
                    (1, 0) | (2, 0) => {
                        seq[i + 1].0 = 2;
                        changed = true;
                    }
                    _ => return None,
                },
            }
        }
    }
    let first = seq.iter().position(|(k, _)| *k == 1)?;
    let last = seq.iter().rposition(|(k, _)| *k == 1)?;
    let lower_steps: Vec<Step> = seq[..first].iter().map(|(_, s)| s.clone()).collect();
    let block_steps: Vec<Step> = seq[first..=last].iter().map(|(_, s)| s.clone()).collect();
    let upper_steps: Vec<Step> = seq[last + 1..].iter().map(|(_, s)| s.clone()).collect();

    let lower = Diagram::from_steps(input.clone(), &lower_steps).ok()?;
    let slice = lower.output();
    // Smallest interval [lo, hi) of `slice` the block touches.
    let mut lo = usize::MAX;
    let mut hi_cur = 0usize;
    let mut delta: isize = 0;
    let mut hi_slice = 0usize;
    for s in &block_steps {
        let d = s.gate.dom_len();
        let c = s.gate.cod_len();
        if lo == usize::MAX {
            lo = s.offset;
            hi_cur = s.offset + d;
        } else {
            // Positions left of `lo` are never shifted by earlier block steps.
            lo = lo.min(s.offset);
            hi_cur = hi_cur.max(s.offset + d);
        }
        hi_slice = (hi_cur as isize - delta) as usize;
        delta += c as isize - d as isize;
        hi_cur = (hi_cur as isize + c as isize - d as isize) as usize;
    }
    let hi = hi_slice;
    let block_input: Word = slice[lo..hi].to_vec();
    let shifted: Vec<Step> = block_steps
        .iter()
        .map(|s| Step { offset: s.offset - lo, gate: s.gate.clone() })
        .collect();
    let block = Diagram::from_steps(block_input, &shifted).ok()?;
    let gamma = slice[..lo].to_vec();
    let delta_w = slice[hi..].to_vec();
    let mut mid_out = gamma.clone();
    mid_out.extend(block.output());
    mid_out.extend(delta_w.iter().cloned());
    let upper = Diagram::from_steps(mid_out, &upper_steps).ok()?;
    Some(Context {
        lower,
        gamma,
        block,
        delta: delta_w,
        upper,
    })
}

/// Splits a diagram with empty input into two side-by-side diagrams, the
/// left one covering outputs `[0, split)`.
pub fn decompose_parallel(d: &Diagram, split: usize) -> Result<(Diagram, Diagram), DiagramError> {
    if !d.input().is_empty() {
        return Err(DiagramError::NonEmptyInput);
    }
    let out_len = d.output().len();
    if split > out_len {
        return Err(DiagramError::SplitOutOfRange { split, len: out_len });
    }
    let pg = PortGraph::new(d);
    let comp = pg.components();
    // side[c] for each component root: Some(true) = left.
    let mut side: Vec<Option<bool>> = vec![None; pg.len()];
    for (g, outs) in pg.outputs.iter().enumerate() {
        for t in outs {
            if let Target::Output(j) = *t {
                let left = j < split;
                let root = comp[g];
                match side[root] {
                    None => side[root] = Some(left),
                    Some(s) if s != left => return Err(DiagramError::NotDecomposable { split }),
                    _ => {}
                }
            }
        }
    }
    // The word is kept in the shape left* right*; closed components join the
    // side of the wire to their left.
    let mut word_side: Vec<bool> = Vec::new();
    let mut left_steps = Vec::new();
    let mut right_steps = Vec::new();
    for (g, s) in pg.steps.iter().enumerate() {
        let root = comp[g];
        let n_left = word_side.iter().filter(|x| **x).count();
        let is_left = *side[root].get_or_insert(s.offset <= n_left && n_left > 0 || s.offset == 0);
        let d_len = s.gate.dom_len();
        if word_side[s.offset..s.offset + d_len].iter().any(|x| *x != is_left) {
            return Err(DiagramError::NotDecomposable { split });
        }
        let local = if is_left {
            if s.offset > n_left {
                return Err(DiagramError::NotDecomposable { split });
            }
            s.offset
        } else {
            if s.offset < n_left {
                return Err(DiagramError::NotDecomposable { split });
            }
            s.offset - n_left
        };
        let step = Step { offset: local, gate: s.gate.clone() };
        if is_left {
            left_steps.push(step);
        } else {
            right_steps.push(step);
        }
        word_side.splice(s.offset..s.offset + d_len, vec![is_left; s.gate.cod_len()]);
    }
    if word_side.iter().take(split).any(|x| !*x) || word_side.iter().skip(split).any(|x| *x) {
        return Err(DiagramError::NotDecomposable { split });
    }
    let l = Diagram::from_steps(vec![], &left_steps)?;
    let r = Diagram::from_steps(vec![], &right_steps)?;
    Ok((l.canonical_form(), r.canonical_form()))
}

/// Gates that can be moved by interchange to the very top of the diagram,
/// with the output offset they then occupy. Sorted by offset.
pub fn last_gates(d: &Diagram) -> Vec<(GateRef, usize)> {
    let steps = d.steps();
    let gate_refs: Vec<GateRef> = d.gates().collect();
    let mut out = Vec::new();
    for i in 0..steps.len() {
        if let Some(moved) = bubble_to_end(&steps, i) {
            let s = moved.last().unwrap();
            out.push((gate_refs[i].clone(), s.offset));
        }
    }
    out.sort_by_key(|(_, o)| *o);
    out
}

/// Moves step `i` to the end of the sequence by interchange, if possible.
pub fn bubble_to_end(steps: &[Step], i: usize) -> Option<Vec<Step>> {
    let mut seq = steps.to_vec();
    for j in i..seq.len() - 1 {
        let (b, a) = commute(&seq[j], &seq[j + 1])?;
        seq[j] = b;
        seq[j + 1] = a;
    }
    Some(seq)
}

pub fn labels_at(w: &[Label], from: usize, len: usize) -> &[Label] {
    &w[from..from + len]
}
