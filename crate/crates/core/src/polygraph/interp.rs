//! Monotone interpretation of twisting diagrams, used as termination
//! evidence for the permutation polygraph.
//!
//! A crossing acts on the two values it carries by `(x, y) -> (x + y, x)`
//! and wires act as identities. The scalar type is generic; see the crate
//! root aliases for the concrete choices.

use std::ops::Add;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Diagram, GateKind};

use super::RewriteRule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("input vector has {got} entries, the diagram has {expected} inputs")]
    ArityMismatch { expected: usize, got: usize },
    #[error("gate {0} has no interpretation")]
    NonTwisting(String),
    #[error("interpretation vectors must be positive")]
    NonPositive,
}

/// A vector of positive values, one per wire.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interp<T> {
    pub values: Vec<T>,
}

impl<T: Clone + Zero + PartialOrd> Interp<T> {
    pub fn new(values: Vec<T>) -> Result<Self, InterpError> {
        if values.iter().any(|v| *v <= T::zero()) {
            return Err(InterpError::NonPositive);
        }
        Ok(Interp { values })
    }
}

impl<T: PartialOrd> Interp<T> {
    /// Product order: `self >= other` everywhere and `self != other`.
    pub fn dominates(&self, other: &Interp<T>) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
            && self.values.iter().zip(&other.values).any(|(a, b)| a > b)
    }
}

pub fn interp_eval<T>(d: &Diagram, input: &Interp<T>) -> Result<Interp<T>, InterpError>
where
    T: Clone + Add<Output = T>,
{
    if input.values.len() != d.input().len() {
        return Err(InterpError::ArityMismatch { expected: d.input().len(), got: input.values.len() });
    }
    let mut v = input.values.clone();
    for s in d.steps() {
        if s.gate.kind != GateKind::Swap {
            return Err(InterpError::NonTwisting(s.gate.to_string()));
        }
        let (x, y) = (v[s.offset].clone(), v[s.offset + 1].clone());
        v[s.offset] = x.clone() + y;
        v[s.offset + 1] = x;
    }
    Ok(Interp { values: v })
}

fn corners(n: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..1u64 << n).map(move |mask| (0..n).map(|i| if mask >> i & 1 == 1 { 100 } else { 1 }).collect())
}

/// Samples `samples` vectors in `{1..50}^n` plus the corners of `{1, 100}^n`
/// and checks that the left-hand side strictly dominates the right-hand side
/// on each of them.
pub fn check_decrease(rule: &RewriteRule, samples: usize, seed: u64) -> bool {
    let n = rule.lhs.input().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = (0..samples).map(|_| (0..n).map(|_| rng.gen_range(1..=50u64)).collect::<Vec<_>>());
    let vectors: Vec<Vec<u64>> = corners(n).chain(random).collect();
    vectors.into_iter().all(|v| {
        let v = Interp { values: v };
        match (interp_eval(&rule.lhs, &v), interp_eval(&rule.rhs, &v)) {
            (Ok(l), Ok(r)) => l.dominates(&r),
            _ => false,
        }
    })
}

/// The all-ones vector of length `n`.
pub fn ones<T: One + Clone>(n: usize) -> Interp<T> {
    Interp { values: vec![T::one(); n] }
}
