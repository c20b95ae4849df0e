mod common;

use common::{at, f};
use proofdiag::diagram::GateRef;
use proofdiag::json::{diagram_from_json, diagram_to_json, JsonError};
use proofdiag::sequential::{decompose_parallel, last_gates};
use proofdiag::{Diagram, DiagramError, GateKind, GateType, Label, Step, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(labels: &[&str]) -> Word {
    labels
        .iter()
        .map(|t| match *t {
            "L" => Label::ControlL,
            "R" => Label::ControlR,
            x => Label::Logical(f(x)),
        })
        .collect()
}

fn ax_c(a: &str) -> Diagram {
    Diagram::from_gate(GateType::ax_c(at(a)))
}

#[test]
fn identities() {
    assert_eq!(Diagram::identity(vec![]), Diagram::empty());
    assert!(Diagram::empty().is_empty());
    let id = Diagram::identity(word(&["L", "a", "R"]));
    assert_eq!(id.output(), word(&["L", "a", "R"]));
    assert_eq!(id.gate_count(None), 0);
    assert!(id.layers().is_empty());
}

#[test]
fn gate_boundaries() {
    let ax = ax_c("a");
    assert!(ax.input().is_empty());
    assert_eq!(ax.output(), word(&["L", "a", "a^", "R"]));
    let t = Diagram::from_gate(GateType::tensor_c(at("a"), at("b")));
    assert_eq!(t.input(), &word(&["a", "R", "L", "b"]));
    assert_eq!(t.output(), word(&["(a*b)"]));
    let s = Diagram::from_gate(GateType::swap(at("a"), at("b")));
    assert_eq!((s.input().clone(), s.output()), (word(&["a", "b"]), word(&["b", "a"])));
    assert_eq!(s.gate_count(None), 1);
}

#[test]
fn sequential_composition() {
    let ax = ax_c("a");
    let same = Diagram::compose_seq(&ax, &Diagram::identity(ax.output())).unwrap();
    assert_eq!(same, ax);
    let s = Diagram::from_gate(GateType::swap(at("a"), at("b")));
    match Diagram::compose_seq(&s, &s) {
        Err(DiagramError::BoundaryMismatch { position, .. }) => assert_eq!(position, 0),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn parallel_composition() {
    let ax = ax_c("a");
    assert_eq!(Diagram::compose_par(&ax, &Diagram::empty()), ax);
    assert_eq!(Diagram::compose_par(&Diagram::empty(), &ax), ax);
    let both = Diagram::compose_par(&ax, &ax_c("b"));
    assert_eq!(both.output(), word(&["L", "a", "a^", "R", "L", "b", "b^", "R"]));
    assert_eq!(both.gate_count(None), 2);
    assert_eq!(both.gate_count(Some(&[GateKind::Swap])), 0);
    let ids = Diagram::compose_par(&Diagram::identity(word(&["a"])), &Diagram::identity(word(&["b"])));
    assert_eq!(ids, Diagram::identity(word(&["a", "b"])));
}

#[test]
fn interchange_and_equality() {
    let phi = Diagram::from_gate(GateType::par(at("a"), at("b")));
    let psi = Diagram::from_gate(GateType::swap(at("c"), at("d")));
    let first = Diagram::compose_seq(
        &phi.whisker(&[], &word(&["c", "d"])),
        &psi.whisker(&word(&["(a@b)"]), &[]),
    )
    .unwrap();
    let second = Diagram::compose_seq(
        &psi.whisker(&word(&["a", "b"]), &[]),
        &phi.whisker(&[], &word(&["d", "c"])),
    )
    .unwrap();
    assert_ne!(first, second);
    assert!(first.equal_mod_interchange(&second));
    assert_eq!(first.canonical_form(), Diagram::compose_par(&phi, &psi));
    assert!(first.equal_mod_interchange(&first));
    assert!(!ax_c("a").equal_mod_interchange(&ax_c("b")));
    let id = Diagram::identity(word(&["a", "L"]));
    assert_eq!(id.canonical_form(), id);
}

#[test]
fn decomposes_independent_blocks() {
    let both = Diagram::compose_par(&ax_c("a"), &ax_c("b"));
    let (l, r) = decompose_parallel(&both, 4).unwrap();
    assert_eq!((l, r), (ax_c("a"), ax_c("b")));
    assert_eq!(decompose_parallel(&ax_c("a"), 2), Err(DiagramError::NotDecomposable { split: 2 }));
    assert!(matches!(decompose_parallel(&ax_c("a"), 9), Err(DiagramError::SplitOutOfRange { .. })));
    let s = Diagram::from_gate(GateType::swap(at("a"), at("b")));
    assert_eq!(decompose_parallel(&s, 1), Err(DiagramError::NonEmptyInput));
}

#[test]
fn last_gates_examples() {
    let ax = ax_c("a");
    assert_eq!(last_gates(&ax), vec![(GateRef { layer: 0, offset: 0, gate: GateType::ax_c(at("a")) }, 0)]);
    assert!(last_gates(&Diagram::identity(word(&["a"]))).is_empty());
    let par = Diagram::from_steps(ax.output(), &[Step { offset: 1, gate: GateType::par(at("a"), f("a^")) }]).unwrap();
    let d = Diagram::compose_seq(&ax, &par).unwrap();
    let last = last_gates(&d);
    assert_eq!(last.len(), 1);
    assert_eq!((last[0].0.gate.kind, last[0].1), (GateKind::Par, 1));
}

#[test]
fn json_is_canonical() {
    let ax = ax_c("a");
    let text = diagram_to_json(&ax);
    assert_eq!(text, r#"{"inputs":[],"layers":[[{"gate":"ax_c","params":["a"]}]]}"#);
    assert_eq!(diagram_from_json(&text).unwrap(), ax);

    let shifted = r#"{"inputs":["a","R"],"layers":[[{"id":"a"},{"id":"R"}],[{"gate":"bot","params":[]},{"id":"a"},{"id":"R"}]]}"#;
    let d = diagram_from_json(shifted).unwrap();
    assert_eq!(d.output(), word(&["bot", "a", "R"]));
    assert_eq!(diagram_to_json(&d), r#"{"inputs":["a","R"],"layers":[[{"gate":"bot","params":[]},{"id":"a"},{"id":"R"}]]}"#);
}

#[test]
fn json_errors() {
    assert!(matches!(diagram_from_json("{"), Err(JsonError::Syntax(_))));
    assert!(matches!(
        diagram_from_json(r#"{"inputs":[],"layers":[[{"gate":"axe","params":["a"]}]]}"#),
        Err(JsonError::UnknownGate(_))
    ));
    assert!(matches!(
        diagram_from_json(r#"{"inputs":["a*"],"layers":[]}"#),
        Err(JsonError::Formula { .. })
    ));
    assert!(matches!(
        diagram_from_json(r#"{"inputs":["a"],"layers":[[{"gate":"ax","params":["a"]}]]}"#),
        Err(JsonError::Diagram(_))
    ));
}

/// Random well-typed plain diagram: gates are chosen so their domain fits
/// the current word at a random offset.
fn random_diagram(seed: u64, max_gates: usize, closed: bool) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = ["a", "b", "c"];
    let input: Word = (0..if closed { 0 } else { rng.gen_range(0..4) }).map(|_| Label::Logical(at(atoms[rng.gen_range(0..3)]))).collect();
    let mut w = input.clone();
    let mut steps = Vec::new();
    for _ in 0..rng.gen_range(0..=max_gates) {
        let n = w.len();
        let formula = |w: &Word, i: usize| w[i].formula().unwrap().clone();
        let gate = match rng.gen_range(0..5) {
            0 | 1 if n >= 2 => {
                let o = rng.gen_range(0..n - 1);
                let (x, y) = (formula(&w, o), formula(&w, o + 1));
                let g = match rng.gen_range(0..3) {
                    0 => GateType::par(x, y),
                    1 => GateType::tensor(x, y),
                    _ => GateType::swap(x, y),
                };
                Step { offset: o, gate: g }
            }
            2 => Step { offset: rng.gen_range(0..=n), gate: GateType::bot() },
            3 => Step { offset: rng.gen_range(0..=n), gate: GateType::one() },
            _ => Step { offset: rng.gen_range(0..=n), gate: GateType::ax(at(atoms[rng.gen_range(0..3)])) },
        };
        let top = Diagram::from_steps(w.clone(), &[gate.clone()]).unwrap();
        w = top.output();
        steps.push(gate);
    }
    Diagram::from_steps(input, &steps).unwrap()
}

fn arb_diagram() -> impl Strategy<Value = Diagram> {
    any::<u64>().prop_map(|s| random_diagram(s, 8, false))
}

fn arb_closed_diagram() -> impl Strategy<Value = Diagram> {
    any::<u64>().prop_map(|s| random_diagram(s, 8, true))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn constructions_stay_well_typed(a in arb_diagram(), b in arb_diagram()) {
        prop_assert!(a.validate().is_ok());
        let par = Diagram::compose_par(&a, &b);
        prop_assert!(par.validate().is_ok());
        prop_assert_eq!(par.gate_count(None), a.gate_count(None) + b.gate_count(None));
        let on_top = Diagram::from_steps(a.output(), &b.steps().iter().map(|s| Step { offset: s.offset + a.output().len(), gate: s.gate.clone() }).collect::<Vec<_>>());
        if b.input().is_empty() {
            let seq = Diagram::compose_seq(&a, &on_top.unwrap()).unwrap();
            prop_assert!(seq.validate().is_ok());
            prop_assert_eq!(seq.gate_count(None), a.gate_count(None) + b.gate_count(None));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_faithful(d in arb_diagram()) {
        let c = d.canonical_form();
        prop_assert!(c.validate().is_ok());
        prop_assert_eq!(c.canonical_form(), c.clone());
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.input(), d.input());
        prop_assert_eq!(c.output(), d.output());
        for k in GateKind::ALL {
            prop_assert_eq!(c.gate_count(Some(&[k])), d.gate_count(Some(&[k])));
        }
    }

    #[test]
    fn interchange_arrangements_agree(a in arb_diagram(), b in arb_diagram()) {
        let (p, q) = (a.input().clone(), a.output());
        let (p2, q2) = (b.input().clone(), b.output());
        let left_first = Diagram::compose_seq(&a.whisker(&[], &p2), &b.whisker(&q, &[])).unwrap();
        let right_first = Diagram::compose_seq(&b.whisker(&p, &[]), &a.whisker(&[], &q2)).unwrap();
        let side_by_side = Diagram::compose_par(&a, &b);
        prop_assert!(left_first.equal_mod_interchange(&side_by_side));
        prop_assert!(right_first.equal_mod_interchange(&side_by_side));
    }

    #[test]
    fn parallel_decomposition_recomposes(a in arb_closed_diagram(), b in arb_closed_diagram()) {
        let d = Diagram::compose_par(&a, &b);
        let (l, r) = decompose_parallel(&d, a.output().len()).unwrap();
        prop_assert!(Diagram::compose_par(&l, &r).equal_mod_interchange(&d));
        prop_assert_eq!(l.output(), a.output());
    }

    #[test]
    fn json_round_trips(d in arb_diagram()) {
        let text = diagram_to_json(&d);
        let back = diagram_from_json(&text).unwrap();
        prop_assert_eq!(&back, &d.canonical_form());
        prop_assert_eq!(diagram_to_json(&back), text);
    }
}
