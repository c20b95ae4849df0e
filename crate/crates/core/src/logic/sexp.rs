//! Reading derivations written as s-expressions:
//! `(ax F)`, `(one)`, `(bot D)`, `(par D)`, `(tensor D D)`, `(cut F D D)`,
//! `(exch (perm i j ...) D)`.

use thiserror::Error;

use crate::formula::{ParseError, Parser};
use crate::perm::{PermError, Permutation};

use super::derivation::Derivation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexpError {
    #[error("at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Formula(#[from] ParseError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn syntax(p: &Parser, msg: impl Into<String>) -> SexpError {
    SexpError::Syntax { pos: p.pos, msg: msg.into() }
}

fn keyword(p: &mut Parser) -> Result<String, SexpError> {
    let w = p.word();
    if w.is_empty() {
        return Err(syntax(p, "expected a keyword"));
    }
    Ok(w)
}

fn derivation(p: &mut Parser) -> Result<Derivation, SexpError> {
    p.expect('(', "'('")?;
    let start = p.pos;
    let kw = keyword(p)?;
    let d = match kw.as_str() {
        "ax" => Derivation::Ax(p.formula()?),
        "one" => Derivation::One,
        "bot" => Derivation::bot(derivation(p)?),
        "par" => Derivation::par(derivation(p)?),
        "tensor" => {
            let l = derivation(p)?;
            Derivation::tensor(l, derivation(p)?)
        }
        "cut" => {
            let f = p.formula()?;
            let l = derivation(p)?;
            Derivation::cut(f, l, derivation(p)?)
        }
        "exch" => {
            let sigma = permutation(p)?;
            Derivation::exch(sigma, derivation(p)?)
        }
        other => {
            return Err(SexpError::Syntax { pos: start, msg: format!("unknown rule {other:?}") });
        }
    };
    p.expect(')', "')'")?;
    Ok(d)
}

fn permutation(p: &mut Parser) -> Result<Permutation, SexpError> {
    p.expect('(', "'('")?;
    if keyword(p)? != "perm" {
        return Err(syntax(p, "expected (perm ...)"));
    }
    let mut images = Vec::new();
    while p.peek() != Some(')') {
        let w = p.word();
        let n = w.parse::<usize>().map_err(|_| syntax(p, format!("expected an index, found {w:?}")))?;
        images.push(n);
    }
    p.expect(')', "')'")?;
    Ok(Permutation::new(images)?)
}

/// Parses one derivation; trailing text is an error.
pub fn parse_derivation(text: &str) -> Result<Derivation, SexpError> {
    let mut p = Parser::new(text);
    let d = derivation(&mut p)?;
    if p.peek().is_some() {
        return Err(syntax(&p, "trailing input"));
    }
    Ok(d)
}
