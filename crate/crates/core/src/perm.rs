//! Permutations, ladders and canonical permutation diagrams.
//!
//! Diagrams act on positions: [`diagram_to_permutation`] sends input
//! position `i` to the output position its wire reaches.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, GateKind, GateType, Label, Step, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {images:?}")]
    NotBijective { n: usize, images: Vec<usize> },
    #[error("control label {0} is not twisting")]
    ControlLabel(String),
    #[error("transposition index {k} out of range for {n} wires")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("permutation of size {perm} does not fit a word of length {word}")]
    SizeMismatch { perm: usize, word: usize },
    #[error("diagram contains non-twisting gate {0}")]
    NonTwistingGate(String),
    #[error("malformed permutation text: {0}")]
    Syntax(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A permutation in one-line notation, 1-based: `images[i-1] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(PermError::NotBijective { n, images });
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    /// The adjacent transposition `(k, k+1)`, 1-based.
    pub fn transposition(n: usize, k: usize) -> Permutation {
        let mut p = Self::identity(n);
        p.images.swap(k - 1, k);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// σ(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation {
            images: first.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Rearranges `items` so that item `i` lands at position σ(i).
    pub fn act<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, it) in items.iter().enumerate() {
            out[self.images[i] - 1] = Some(it.clone());
        }
        out.into_iter().map(|x| x.unwrap()).collect()
    }

    /// All permutations of size `n` in lexicographic order of their one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "perm({})", parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses `perm(3 1 2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix("perm")
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| PermError::Syntax(s.to_string()))?;
        let images = inner
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| PermError::Syntax(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(images)
    }
}

/// The reduction `Er(σ) ∈ S_n` of `σ ∈ S_{n+1}`: drop the first point and
/// renumber the remaining images.
pub fn er(sigma: &Permutation) -> Permutation {
    let first = sigma.apply(1);
    let images = sigma.images[1..]
        .iter()
        .map(|&x| if x < first { x } else { x - 1 })
        .collect();
    Permutation { images }
}

fn check_twisting(word: &[Label]) -> Result<(), PermError> {
    match word.iter().find(|l| l.is_control()) {
        Some(l) => Err(PermError::ControlLabel(l.to_string())),
        None => Ok(()),
    }
}

fn swap_step(word: &[Label], offset: usize) -> Step {
    let a = word[offset].formula().expect("twisting label").clone();
    let b = word[offset + 1].formula().expect("twisting label").clone();
    Step { offset, gate: GateType::swap(a, b) }
}

/// `id_{k-1} * swap * id_{n-k-1}`, swapping wires `k` and `k+1` (1-based).
pub fn transposition_diagram(word: &Word, k: usize) -> Result<Diagram, PermError> {
    if k == 0 || k >= word.len() {
        return Err(PermError::IndexOutOfRange { k, n: word.len() });
    }
    check_twisting(&word[k - 1..=k])?;
    Ok(Diagram::from_steps(word.clone(), &[swap_step(word, k - 1)])?)
}

/// Applies adjacent swaps at the given offsets in order.
fn swaps_diagram(word: &Word, offsets: impl IntoIterator<Item = usize>) -> Result<Diagram, PermError> {
    check_twisting(word)?;
    let mut cur = word.clone();
    let mut steps = Vec::new();
    for o in offsets {
        steps.push(swap_step(&cur, o));
        cur.swap(o, o + 1);
    }
    Ok(Diagram::from_steps(word.clone(), &steps)?)
}

/// Moves the first wire to the last position.
pub fn ladder_left(word: &Word) -> Result<Diagram, PermError> {
    swaps_diagram(word, 0..word.len().saturating_sub(1))
}

/// Moves the last wire to the first position.
pub fn ladder_right(word: &Word) -> Result<Diagram, PermError> {
    swaps_diagram(word, (0..word.len().saturating_sub(1)).rev())
}

/// The canonical twisting diagram realizing σ on `word`:
/// the left ladder carrying wire 1 to σ(1), stacked on `id_1 * φ̂_{Er(σ)}`.
pub fn canonical_perm_diagram(sigma: &Permutation, word: &Word) -> Result<Diagram, PermError> {
    if sigma.len() != word.len() {
        return Err(PermError::SizeMismatch { perm: sigma.len(), word: word.len() });
    }
    check_twisting(word)?;
    Ok(Diagram::from_steps(word.clone(), &canonical_steps(sigma, word))?)
}

fn canonical_steps(sigma: &Permutation, word: &[Label]) -> Vec<Step> {
    if sigma.len() <= 1 {
        return vec![];
    }
    let rest = er(sigma);
    let mut steps: Vec<Step> = canonical_steps(&rest, &word[1..])
        .into_iter()
        .map(|s| Step { offset: s.offset + 1, gate: s.gate })
        .collect();
    // Word after the lower part: wire 1 untouched, the rest permuted by Er(σ).
    let mut cur = vec![word[0].clone()];
    cur.extend(rest.act(&word[1..]));
    for o in 0..sigma.apply(1) - 1 {
        steps.push(swap_step(&cur, o));
        cur.swap(o, o + 1);
    }
    steps
}

/// Traces each input wire of a twisting diagram to its output position.
pub fn diagram_to_permutation(d: &Diagram) -> Result<Permutation, PermError> {
    let mut pos: Vec<usize> = (1..=d.input().len()).collect();
    for s in d.steps() {
        if s.gate.kind != GateKind::Swap {
            return Err(PermError::NonTwistingGate(s.gate.to_string()));
        }
        pos.swap(s.offset, s.offset + 1);
    }
    // pos[j] = input wire now at position j+1
    let mut images = vec![0; pos.len()];
    for (j, &i) in pos.iter().enumerate() {
        images[i - 1] = j + 1;
    }
    Ok(Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::logical_word;
    use crate::formula::Formula;

    fn w(names: &[&str]) -> Word {
        logical_word(&names.iter().map(|n| Formula::atom(n)).collect::<Vec<_>>())
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// Independent reconstruction: σ is determined by σ(1) and Er(σ).
    fn reconstruct(first: usize, rest: &Permutation) -> Permutation {
        let mut images = vec![first];
        images.extend(rest.images().iter().map(|&x| if x < first { x } else { x + 1 }));
        perm(&images)
    }

    #[test]
    fn er_examples_and_reconstruction_oracle() {
        assert_eq!(er(&perm(&[1, 2, 3])), perm(&[1, 2]));
        assert_eq!(er(&perm(&[2, 1, 3])), perm(&[1, 2]));
        assert_eq!(er(&perm(&[3, 1, 2])), perm(&[1, 2]));
        for n in 2..=6 {
            for s in Permutation::all(n) {
                let r = er(&s);
                assert!(Permutation::new(r.images().to_vec()).is_ok());
                assert_eq!(reconstruct(s.apply(1), &r), s);
            }
        }
    }

    #[test]
    fn enumerates_all_permutations() {
        let f = [1usize, 1, 2, 6, 24, 120];
        for (n, &c) in f.iter().enumerate() {
            assert_eq!(Permutation::all(n).len(), c);
        }
    }

    #[test]
    fn parses_and_prints_one_line_notation() {
        let p: Permutation = "perm(3 1 2)".parse().unwrap();
        assert_eq!(p.images(), &[3, 1, 2]);
        assert_eq!(p.to_string(), "perm(3 1 2)");
        assert!("perm(1 1)".parse::<Permutation>().is_err());
        assert!("(1 2)".parse::<Permutation>().is_err());
    }

    #[test]
    fn transpositions() {
        let d = transposition_diagram(&w(&["a", "b"]), 1).unwrap();
        assert_eq!(d, Diagram::from_gate(GateType::swap(Formula::atom("a"), Formula::atom("b"))));
        let d = transposition_diagram(&w(&["a", "b", "c"]), 2).unwrap();
        assert_eq!(d.output(), w(&["a", "c", "b"]));
        assert_eq!(d.steps()[0].offset, 1);
        let mut lw = vec![Label::ControlL];
        lw.extend(w(&["a"]));
        assert!(matches!(transposition_diagram(&lw, 1), Err(PermError::ControlLabel(_))));
    }

    #[test]
    fn ladders_move_end_wires() {
        assert_eq!(ladder_left(&w(&["a"])).unwrap(), Diagram::identity(w(&["a"])));
        let l2 = ladder_left(&w(&["a", "b"])).unwrap();
        let r2 = ladder_right(&w(&["a", "b"])).unwrap();
        assert_eq!(l2, r2);
        assert_eq!(l2.gate_count(None), 1);
        let l3 = ladder_left(&w(&["a", "b", "c"])).unwrap();
        assert_eq!(diagram_to_permutation(&l3).unwrap(), perm(&[3, 1, 2]));
        assert_eq!(l3.output(), w(&["b", "c", "a"]));
        let r3 = ladder_right(&w(&["a", "b", "c"])).unwrap();
        assert_eq!(diagram_to_permutation(&r3).unwrap(), perm(&[2, 3, 1]));
        assert_eq!(r3.output(), w(&["c", "a", "b"]));
    }

    #[test]
    fn canonical_diagrams_realize_their_permutation() {
        let names = ["a", "b", "c", "d", "e", "f"];
        for n in 1..=6 {
            let word = w(&names[..n]);
            for s in Permutation::all(n) {
                let d = canonical_perm_diagram(&s, &word).unwrap();
                assert_eq!(diagram_to_permutation(&d).unwrap(), s);
                assert_eq!(d.output(), s.act(&word));
            }
        }
        let word = w(&["a"]);
        assert_eq!(canonical_perm_diagram(&Permutation::identity(1), &word).unwrap().gate_count(None), 0);
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let word = w(&["a", "b", "c", "d"]);
        for s in Permutation::all(4) {
            for t in Permutation::all(4).into_iter().step_by(5) {
                let ds = canonical_perm_diagram(&s, &word).unwrap();
                let dt = canonical_perm_diagram(&t, &ds.output()).unwrap();
                let comp = Diagram::compose_seq(&ds, &dt).unwrap();
                assert_eq!(diagram_to_permutation(&comp).unwrap(), t.after(&s));
            }
        }
    }

    #[test]
    fn rejects_non_twisting_gates() {
        let d = Diagram::from_gate(GateType::ax(Formula::atom("a")));
        assert!(matches!(diagram_to_permutation(&d), Err(PermError::NonTwistingGate(_))));
    }
}
