//! MLL/MLLc formulas in negation normal form, sequents, and the text grammar.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! F       ::= primary "^"*
//! primary ::= atom | "1" | "bot" | "(" F ")" | "(" F "*" F ")" | "(" F "@" F ")"
//! atom    ::= [a-z][a-z0-9_]*
//! ```
//!
//! A postfix `^` is pushed down to the atoms by De Morgan at parse time, so
//! the tree never carries a negation node.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A multiplicative formula. Duality only ever appears on atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    DualAtom(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    One,
    Bot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input at position {pos}, expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
    #[error("unexpected character {found:?} at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: char,
        expected: &'static str,
    },
    #[error("unknown token {token:?} at position {pos}")]
    UnknownToken { pos: usize, token: String },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn dual_atom(name: &str) -> Formula {
        Formula::DualAtom(name.to_string())
    }

    pub fn tensor(left: Formula, right: Formula) -> Formula {
        Formula::Tensor(Box::new(left), Box::new(right))
    }

    pub fn par(left: Formula, right: Formula) -> Formula {
        Formula::Par(Box::new(left), Box::new(right))
    }

    /// De Morgan dual. `(A * B)^ = B^ @ A^` swaps the operands.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom(n) => Formula::DualAtom(n.clone()),
            Formula::DualAtom(n) => Formula::Atom(n.clone()),
            Formula::Tensor(a, b) => Formula::par(b.dual(), a.dual()),
            Formula::Par(a, b) => Formula::tensor(b.dual(), a.dual()),
            Formula::One => Formula::Bot,
            Formula::Bot => Formula::One,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Formula::One | Formula::Bot)
    }

    pub fn has_units(&self) -> bool {
        match self {
            Formula::One | Formula::Bot => true,
            Formula::Atom(_) | Formula::DualAtom(_) => false,
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.has_units() || b.has_units(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }

    /// Inserts every subformula (including `self`) into `out`.
    pub fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        out.insert(self.clone());
        if let Formula::Tensor(a, b) | Formula::Par(a, b) = self {
            a.collect_subformulas(out);
            b.collect_subformulas(out);
        }
    }

    /// Metavariables are atoms whose name starts with an uppercase letter;
    /// the external grammar cannot produce them.
    pub(crate) fn is_metavar_name(name: &str) -> bool {
        name.starts_with(|c: char| c.is_ascii_uppercase())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(n) => write!(f, "{n}"),
            Formula::DualAtom(n) => write!(f, "{n}^"),
            Formula::Tensor(a, b) => write!(f, "({a}*{b})"),
            Formula::Par(a, b) => write!(f, "({a}@{b})"),
            Formula::One => write!(f, "1"),
            Formula::Bot => write!(f, "bot"),
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// Parses a complete formula; see the module docs for the grammar.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text);
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(ParseError::Trailing { pos: p.pos });
    }
    Ok(f)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Character-level recursive descent parser, shared with the derivation reader.
pub(crate) struct Parser {
    pub(crate) chars: Vec<char>,
    pub(crate) pos: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(ParseError::Unexpected {
                pos: self.pos,
                found,
                expected,
            }),
            None => Err(ParseError::UnexpectedEnd {
                pos: self.pos,
                expected,
            }),
        }
    }

    /// Reads `[a-z0-9_]+` starting at the current position.
    pub(crate) fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.chars[start..self.pos].iter().collect()
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.primary()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            f = f.dual();
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd {
                pos: self.pos,
                expected: "formula",
            }),
            Some('(') => {
                self.pos += 1;
                let left = self.formula()?;
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(left)
                    }
                    Some('*') | Some('@') => {
                        let op = self.chars[self.pos];
                        self.pos += 1;
                        let right = self.formula()?;
                        self.expect(')', "')'")?;
                        Ok(if op == '*' {
                            Formula::tensor(left, right)
                        } else {
                            Formula::par(left, right)
                        })
                    }
                    Some(found) => Err(ParseError::Unexpected {
                        pos: self.pos,
                        found,
                        expected: "'*', '@' or ')'",
                    }),
                    None => Err(ParseError::UnexpectedEnd {
                        pos: self.pos,
                        expected: "'*', '@' or ')'",
                    }),
                }
            }
            Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() => {
                let start = self.pos;
                let w = self.word();
                match w.as_str() {
                    "1" => Ok(Formula::One),
                    "bot" => Ok(Formula::Bot),
                    _ if w.starts_with(|c: char| c.is_ascii_lowercase()) => Ok(Formula::Atom(w)),
                    _ => Err(ParseError::UnknownToken {
                        pos: start,
                        token: w,
                    }),
                }
            }
            Some(found) => Err(ParseError::Unexpected {
                pos: self.pos,
                found,
                expected: "formula",
            }),
        }
    }
}

/// An ordered one-sided sequent `⊢ A1, ..., Ak`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub formulas: Vec<Formula>,
}

impl Sequent {
    pub fn new(formulas: Vec<Formula>) -> Self {
        Sequent { formulas }
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.formulas.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Closes a set of formulas under subformulas and duality.
pub fn closure(seeds: &[Formula]) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for f in seeds {
        f.collect_subformulas(&mut out);
        f.dual().collect_subformulas(&mut out);
    }
    out
}
