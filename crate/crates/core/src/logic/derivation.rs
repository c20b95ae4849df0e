//! Sequent-calculus derivations with explicit exchange.

use std::fmt;

use crate::formula::{Formula, Sequent};
use crate::perm::Permutation;

use super::LogicError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// `⊢ A, A^`
    Ax(Formula),
    /// `⊢ 1`
    One,
    /// From `⊢ Γ` infer `⊢ Γ, bot`.
    Bot(Box<Derivation>),
    /// From `⊢ Γ, A, B` infer `⊢ Γ, A@B`.
    Par(Box<Derivation>),
    /// From `⊢ Σ, A` and `⊢ B, Γ` infer `⊢ Σ, A*B, Γ`.
    Tensor(Box<Derivation>, Box<Derivation>),
    /// From `⊢ Σ, A` and `⊢ A^, Γ` infer `⊢ Σ, Γ`.
    Cut(Formula, Box<Derivation>, Box<Derivation>),
    /// From `⊢ A1..Ak` infer `⊢ Aσ(1)..Aσ(k)`.
    Exch(Permutation, Box<Derivation>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndSequentReport {
    pub sequent: Sequent,
    pub rule_count: usize,
}

impl Derivation {
    pub fn bot(p: Derivation) -> Derivation {
        Derivation::Bot(Box::new(p))
    }

    pub fn par(p: Derivation) -> Derivation {
        Derivation::Par(Box::new(p))
    }

    pub fn tensor(l: Derivation, r: Derivation) -> Derivation {
        Derivation::Tensor(Box::new(l), Box::new(r))
    }

    pub fn cut(f: Formula, l: Derivation, r: Derivation) -> Derivation {
        Derivation::Cut(f, Box::new(l), Box::new(r))
    }

    pub fn exch(sigma: Permutation, p: Derivation) -> Derivation {
        Derivation::Exch(sigma, Box::new(p))
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Derivation::Ax(_) => "ax",
            Derivation::One => "one",
            Derivation::Bot(_) => "bot",
            Derivation::Par(_) => "par",
            Derivation::Tensor(..) => "tensor",
            Derivation::Cut(..) => "cut",
            Derivation::Exch(..) => "exch",
        }
    }

    /// Number of rule instances, exchanges included.
    pub fn size(&self) -> usize {
        match self {
            Derivation::Ax(_) | Derivation::One => 1,
            Derivation::Bot(p) | Derivation::Par(p) | Derivation::Exch(_, p) => 1 + p.size(),
            Derivation::Tensor(l, r) | Derivation::Cut(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Number of rule instances other than exchanges.
    pub fn logical_rule_count(&self) -> usize {
        match self {
            Derivation::Ax(_) | Derivation::One => 1,
            Derivation::Exch(_, p) => p.logical_rule_count(),
            Derivation::Bot(p) | Derivation::Par(p) => 1 + p.logical_rule_count(),
            Derivation::Tensor(l, r) | Derivation::Cut(_, l, r) => {
                1 + l.logical_rule_count() + r.logical_rule_count()
            }
        }
    }

    pub fn cut_count(&self) -> usize {
        match self {
            Derivation::Ax(_) | Derivation::One => 0,
            Derivation::Bot(p) | Derivation::Par(p) | Derivation::Exch(_, p) => p.cut_count(),
            Derivation::Tensor(l, r) => l.cut_count() + r.cut_count(),
            Derivation::Cut(_, l, r) => 1 + l.cut_count() + r.cut_count(),
        }
    }
}

fn violation(path: &str, rule: &str, reason: String) -> LogicError {
    LogicError::RuleViolation {
        node: if path.is_empty() { format!("{rule} at root") } else { format!("{rule} at {path}") },
        reason,
    }
}

fn child(path: &str, i: usize) -> String {
    format!("{path}/{i}")
}

fn check(d: &Derivation, path: &str) -> Result<Vec<Formula>, LogicError> {
    match d {
        Derivation::Ax(a) => Ok(vec![a.clone(), a.dual()]),
        Derivation::One => Ok(vec![Formula::One]),
        Derivation::Bot(p) => {
            let mut g = check(p, &child(path, 0))?;
            g.push(Formula::Bot);
            Ok(g)
        }
        Derivation::Par(p) => {
            let mut g = check(p, &child(path, 0))?;
            if g.len() < 2 {
                return Err(violation(path, "par", format!("premise has {} formulas, needs at least 2", g.len())));
            }
            let b = g.pop().unwrap();
            let a = g.pop().unwrap();
            g.push(Formula::par(a, b));
            Ok(g)
        }
        Derivation::Tensor(l, r) => {
            let mut gl = check(l, &child(path, 0))?;
            let gr = check(r, &child(path, 1))?;
            let (Some(a), Some(b)) = (gl.pop(), gr.first().cloned()) else {
                return Err(violation(path, "tensor", "a premise has an empty sequent".into()));
            };
            gl.push(Formula::tensor(a, b));
            gl.extend(gr.into_iter().skip(1));
            Ok(gl)
        }
        Derivation::Cut(f, l, r) => {
            let mut gl = check(l, &child(path, 0))?;
            let gr = check(r, &child(path, 1))?;
            match gl.pop() {
                Some(x) if x == *f => {}
                other => {
                    return Err(violation(
                        path,
                        "cut",
                        format!(
                            "left premise must end with {f}, ends with {}",
                            other.map_or("nothing".to_string(), |x| x.to_string())
                        ),
                    ))
                }
            }
            let fd = f.dual();
            match gr.first() {
                Some(x) if *x == fd => {}
                other => {
                    return Err(violation(
                        path,
                        "cut",
                        format!(
                            "right premise must start with {fd}, starts with {}",
                            other.map_or("nothing".to_string(), |x| x.to_string())
                        ),
                    ))
                }
            }
            gl.extend(gr.into_iter().skip(1));
            Ok(gl)
        }
        Derivation::Exch(sigma, p) => {
            let g = check(p, &child(path, 0))?;
            if sigma.len() != g.len() {
                return Err(violation(
                    path,
                    "exch",
                    format!("permutation of size {} for a sequent of {} formulas", sigma.len(), g.len()),
                ));
            }
            Ok((1..=g.len()).map(|i| g[sigma.apply(i) - 1].clone()).collect())
        }
    }
}

/// Validates every rule instance and returns the end sequent.
pub fn check_derivation(d: &Derivation) -> Result<EndSequentReport, LogicError> {
    let formulas = check(d, "")?;
    Ok(EndSequentReport { sequent: Sequent::new(formulas), rule_count: d.size() })
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Ax(a) => write!(f, "(ax {a})"),
            Derivation::One => write!(f, "(one)"),
            Derivation::Bot(p) => write!(f, "(bot {p})"),
            Derivation::Par(p) => write!(f, "(par {p})"),
            Derivation::Tensor(l, r) => write!(f, "(tensor {l} {r})"),
            Derivation::Cut(x, l, r) => write!(f, "(cut {x} {l} {r})"),
            Derivation::Exch(s, p) => {
                let imgs: Vec<String> = s.images().iter().map(|x| x.to_string()).collect();
                write!(f, "(exch (perm {}) {p})", imgs.join(" "))
            }
        }
    }
}
