//! Rule schemas. Templates use uppercase atoms `A`, `B`, `C` as
//! metavariables; matching binds them to concrete formulas.

use crate::diagram::{logical_word, Diagram, GateType, Step, Word};
use crate::formula::Formula;

use super::{RewriteRule, RuleFamily};

fn mv(name: &str) -> Formula {
    Formula::atom(name)
}

fn a() -> Formula {
    mv("A")
}
fn b() -> Formula {
    mv("B")
}
fn c() -> Formula {
    mv("C")
}

fn st(offset: usize, gate: GateType) -> Step {
    Step { offset, gate }
}

fn rule(name: &str, family: RuleFamily, input: Word, lhs: &[Step], rhs: &[Step]) -> RewriteRule {
    let lhs = Diagram::from_steps(input.clone(), lhs).expect("well-typed rule template");
    let rhs = Diagram::from_steps(input, rhs).expect("well-typed rule template");
    debug_assert_eq!(lhs.output(), rhs.output(), "{name}");
    RewriteRule {
        name: name.to_string(),
        family,
        lhs: lhs.canonical_form(),
        rhs: rhs.canonical_form(),
    }
}

fn w(fs: &[Formula]) -> Word {
    logical_word(fs)
}

pub(crate) fn swap_involution() -> RewriteRule {
    rule(
        "ss",
        RuleFamily::TwistInvolution,
        w(&[a(), b()]),
        &[st(0, GateType::swap(a(), b())), st(0, GateType::swap(b(), a()))],
        &[],
    )
}

pub(crate) fn yang_baxter() -> RewriteRule {
    rule(
        "yb",
        RuleFamily::YangBaxter,
        w(&[a(), b(), c()]),
        &[
            st(0, GateType::swap(a(), b())),
            st(1, GateType::swap(a(), c())),
            st(0, GateType::swap(b(), c())),
        ],
        &[
            st(1, GateType::swap(b(), c())),
            st(0, GateType::swap(a(), c())),
            st(1, GateType::swap(a(), b())),
        ],
    )
}

/// Moves a two-input gate `g: A,B => G` across a wire `C`, in both mirror images.
fn binary_slides(prefix: &str, g: fn(Formula, Formula) -> GateType) -> [RewriteRule; 2] {
    let out = g(a(), b()).codomain()[0].formula().unwrap().clone();
    [
        rule(
            &format!("{prefix}_slide_right"),
            RuleFamily::Naturality,
            w(&[a(), b(), c()]),
            &[st(0, g(a(), b())), st(0, GateType::swap(out.clone(), c()))],
            &[
                st(1, GateType::swap(b(), c())),
                st(0, GateType::swap(a(), c())),
                st(1, g(a(), b())),
            ],
        ),
        rule(
            &format!("{prefix}_slide_left"),
            RuleFamily::Naturality,
            w(&[c(), a(), b()]),
            &[st(1, g(a(), b())), st(0, GateType::swap(c(), out))],
            &[
                st(0, GateType::swap(c(), a())),
                st(1, GateType::swap(c(), b())),
                st(0, g(a(), b())),
            ],
        ),
    ]
}

fn ax_slides() -> [RewriteRule; 2] {
    let ad = a().dual();
    [
        rule(
            "ax_slide_right",
            RuleFamily::Naturality,
            w(&[b()]),
            &[
                st(0, GateType::ax(a())),
                st(1, GateType::swap(ad.clone(), b())),
                st(0, GateType::swap(a(), b())),
            ],
            &[st(1, GateType::ax(a()))],
        ),
        rule(
            "ax_slide_left",
            RuleFamily::Naturality,
            w(&[b()]),
            &[
                st(1, GateType::ax(a())),
                st(0, GateType::swap(b(), a())),
                st(1, GateType::swap(b(), ad)),
            ],
            &[st(0, GateType::ax(a()))],
        ),
    ]
}

fn cut_slides() -> [RewriteRule; 2] {
    let ad = a().dual();
    [
        rule(
            "cut_slide_left",
            RuleFamily::Naturality,
            w(&[a(), ad.clone(), b()]),
            &[
                st(1, GateType::swap(ad.clone(), b())),
                st(0, GateType::swap(a(), b())),
                st(1, GateType::cut(a())),
            ],
            &[st(0, GateType::cut(a()))],
        ),
        rule(
            "cut_slide_right",
            RuleFamily::Naturality,
            w(&[b(), a(), ad.clone()]),
            &[
                st(0, GateType::swap(b(), a())),
                st(1, GateType::swap(b(), ad)),
                st(0, GateType::cut(a())),
            ],
            &[st(1, GateType::cut(a()))],
        ),
    ]
}

fn ax_involution() -> RewriteRule {
    rule(
        "ax_involution",
        RuleFamily::AxInvolution,
        vec![],
        &[st(0, GateType::ax(a())), st(0, GateType::swap(a(), a().dual()))],
        &[st(0, GateType::ax(a().dual()))],
    )
}

fn cut_involution() -> RewriteRule {
    rule(
        "cut_involution",
        RuleFamily::AxInvolution,
        w(&[a(), a().dual()]),
        &[st(0, GateType::swap(a(), a().dual())), st(0, GateType::cut(a().dual()))],
        &[st(0, GateType::cut(a()))],
    )
}

fn ax_c_involution() -> RewriteRule {
    rule(
        "ax_c_involution",
        RuleFamily::AxInvolution,
        vec![],
        &[st(0, GateType::ax_c(a())), st(1, GateType::swap(a(), a().dual()))],
        &[st(0, GateType::ax_c(a().dual()))],
    )
}

/// Slides of a zero-input unit gate across a wire, both directions.
fn unit_slides(prefix: &str, g: fn() -> GateType) -> [RewriteRule; 2] {
    let u = g().codomain()[0].formula().unwrap().clone();
    [
        rule(
            &format!("{prefix}_slide_right"),
            RuleFamily::Unit,
            w(&[a()]),
            &[st(0, g()), st(0, GateType::swap(u.clone(), a()))],
            &[st(1, g())],
        ),
        rule(
            &format!("{prefix}_slide_left"),
            RuleFamily::Unit,
            w(&[a()]),
            &[st(1, g()), st(0, GateType::swap(a(), u))],
            &[st(0, g())],
        ),
    ]
}

fn cut_connectives() -> [RewriteRule; 2] {
    let input = w(&[a(), b(), b().dual(), a().dual()]);
    let rhs = [st(1, GateType::cut(b())), st(0, GateType::cut(a()))];
    [
        rule(
            "cut_par_tensor",
            RuleFamily::CutElimination,
            input.clone(),
            &[
                st(0, GateType::par(a(), b())),
                st(1, GateType::tensor(b().dual(), a().dual())),
                st(0, GateType::cut(Formula::par(a(), b()))),
            ],
            &rhs,
        ),
        rule(
            "cut_tensor_par",
            RuleFamily::CutElimination,
            input,
            &[
                st(0, GateType::tensor(a(), b())),
                st(1, GateType::par(b().dual(), a().dual())),
                st(0, GateType::cut(Formula::tensor(a(), b()))),
            ],
            &rhs,
        ),
    ]
}

fn cut_units() -> [RewriteRule; 2] {
    [
        rule(
            "cut_bot_one",
            RuleFamily::CutElimination,
            vec![],
            &[st(0, GateType::bot()), st(1, GateType::one()), st(0, GateType::cut(Formula::Bot))],
            &[],
        ),
        rule(
            "cut_one_bot",
            RuleFamily::CutElimination,
            vec![],
            &[st(0, GateType::one()), st(1, GateType::bot()), st(0, GateType::cut(Formula::One))],
            &[],
        ),
    ]
}

pub(crate) fn permutation_rules() -> Vec<RewriteRule> {
    vec![swap_involution(), yang_baxter()]
}

/// Twisting relations of the plain polygraph.
pub(crate) fn plain_twisting(units: bool) -> Vec<RewriteRule> {
    let mut out = permutation_rules();
    out.extend(ax_slides());
    out.extend(cut_slides());
    out.extend(binary_slides("tensor", GateType::tensor));
    out.extend(binary_slides("par", GateType::par));
    out.push(ax_involution());
    out.push(cut_involution());
    if units {
        out.extend(unit_slides("bot", GateType::bot));
        out.extend(unit_slides("one", GateType::one));
    }
    out
}

pub(crate) fn plain_cut(units: bool) -> Vec<RewriteRule> {
    let mut out: Vec<RewriteRule> = cut_connectives().into();
    if units {
        out.extend(cut_units());
    }
    out
}

pub(crate) fn control_twisting(units: bool) -> Vec<RewriteRule> {
    let mut out = permutation_rules();
    out.extend(binary_slides("par", GateType::par));
    out.push(ax_c_involution());
    if units {
        out.extend(unit_slides("bot", GateType::bot));
    }
    out
}
