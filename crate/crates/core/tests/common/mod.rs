#![allow(dead_code)]

use proofdiag::logic::{check_derivation, Derivation};
use proofdiag::{Formula, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn at(n: &str) -> Formula {
    Formula::atom(n)
}

pub fn f(text: &str) -> Formula {
    text.parse().unwrap()
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, units: bool) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.5);
    if leaf {
        if units && rng.gen_bool(0.15) {
            return if rng.gen_bool(0.5) { Formula::One } else { Formula::Bot };
        }
        let a = ["a", "b", "c"][rng.gen_range(0..3)];
        return if rng.gen_bool(0.5) { Formula::atom(a) } else { Formula::dual_atom(a) };
    }
    let l = random_formula(rng, depth - 1, units);
    let r = random_formula(rng, depth - 1, units);
    if rng.gen_bool(0.5) {
        Formula::tensor(l, r)
    } else {
        Formula::par(l, r)
    }
}

/// A cut-free derivation of `⊢ A, A^` expanded down to atoms and units.
pub fn eta(a: &Formula) -> Derivation {
    let swap = || perm(&[2, 1]);
    match a {
        Formula::Tensor(x, y) => {
            let t = Derivation::tensor(Derivation::exch(swap(), eta(x)), eta(y));
            Derivation::par(Derivation::exch(perm(&[2, 3, 1]), t))
        }
        Formula::Par(..) | Formula::Bot => Derivation::exch(swap(), eta(&a.dual())),
        Formula::One => Derivation::bot(Derivation::One),
        _ => Derivation::Ax(a.clone()),
    }
}

fn len(d: &Derivation) -> usize {
    check_derivation(d).unwrap().sequent.len()
}

fn last(d: &Derivation) -> Formula {
    check_derivation(d).unwrap().sequent.formulas.last().unwrap().clone()
}

/// Random valid derivation of height at most `depth`. Cuts only appear
/// while `cuts > 0`, and each one decrements it.
pub fn random_derivation<R: Rng>(rng: &mut R, depth: usize, units: bool, cuts: &mut usize) -> Derivation {
    if depth <= 1 || rng.gen_bool(0.2) {
        if units && rng.gen_bool(0.15) {
            return Derivation::One;
        }
        return Derivation::Ax(random_formula(rng, 1, units));
    }
    let sub = |rng: &mut R, cuts: &mut usize| random_derivation(rng, depth - 1, units, cuts);
    loop {
        match rng.gen_range(0..6) {
            0 => {
                let p = sub(rng, cuts);
                if len(&p) >= 2 {
                    return Derivation::par(p);
                }
            }
            1 if units => return Derivation::bot(sub(rng, cuts)),
            2 | 3 => {
                let l = sub(rng, cuts);
                return Derivation::tensor(l, sub(rng, cuts));
            }
            4 => {
                let p = sub(rng, cuts);
                let mut images: Vec<usize> = (1..=len(&p)).collect();
                images.shuffle(rng);
                return Derivation::exch(Permutation::new(images).unwrap(), p);
            }
            5 if *cuts > 0 => {
                *cuts -= 1;
                let l = sub(rng, cuts);
                let a = last(&l);
                let r = if rng.gen_bool(0.5) {
                    Derivation::Ax(a.dual())
                } else {
                    Derivation::exch(perm(&[2, 1]), eta(&a))
                };
                return Derivation::cut(a, l, r);
            }
            _ => {}
        }
    }
}

pub fn height(d: &Derivation) -> usize {
    match d {
        Derivation::Ax(_) | Derivation::One => 1,
        Derivation::Bot(p) | Derivation::Par(p) | Derivation::Exch(_, p) => 1 + height(p),
        Derivation::Tensor(l, r) | Derivation::Cut(_, l, r) => 1 + height(l).max(height(r)),
    }
}
