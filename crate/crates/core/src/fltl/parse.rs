//! Text syntax for formulas.
//!
//! ```text
//! formula := 'G' unary | expr
//! expr    := or ('->' expr)?           right associative
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | 'X' atom | primary
//! primary := atom | '(' expr ')' | '(' atom ',' atom ')'
//! atom    := ident | 'true' | 'false'
//! ```
//!
//! Identifiers are `[A-Za-z_][A-Za-z0-9_']*`, excluding the keywords `G`,
//! `X`, `true`, `false` (the constants are also accepted as `True`/`TRUE`).

use thiserror::Error;

use super::{Expr, GFormula, GxAtom, GxFormula, PairAtom, PairFormula, Prop, PropFormula};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

pub(crate) fn is_reserved(name: &str) -> bool {
    matches!(
        name,
        "G" | "X" | "true" | "false" | "True" | "False" | "TRUE" | "FALSE"
    )
}

/// Parses `G P_X`.
pub fn parse_gx(src: &str) -> Result<GxFormula, ParseError> {
    let (raw, always) = parse_raw(src)?;
    if !always {
        return Err(ParseError::new(0, "expected a formula of the form `G ...`"));
    }
    let body = raw.try_map_atoms(&mut |a| match a {
        RawAtom::Plain(p) => Ok(GxAtom::Now(p.clone())),
        RawAtom::Next(p) => Ok(GxAtom::Next(p.clone())),
        RawAtom::Pair(..) => Err(ParseError::new(
            0,
            "paired atoms are not allowed in a `G P_X` formula",
        )),
    })?;
    Ok(GxFormula::new(body))
}

/// Parses `G P` with paired atoms `(p, q)`.
pub fn parse_g(src: &str) -> Result<GFormula, ParseError> {
    let (raw, always) = parse_raw(src)?;
    if !always {
        return Err(ParseError::new(0, "expected a formula of the form `G ...`"));
    }
    Ok(GFormula::new(to_pairs(&raw)?))
}

/// Parses a propositional formula over single labels (no `G`, `X` or pairs).
pub fn parse_prop(src: &str) -> Result<PropFormula, ParseError> {
    let (raw, always) = parse_raw(src)?;
    if always {
        return Err(ParseError::new(0, "temporal operator `G` not allowed here"));
    }
    raw.try_map_atoms(&mut |a| match a {
        RawAtom::Plain(p) => Ok(p.clone()),
        RawAtom::Next(_) => Err(ParseError::new(0, "temporal operator `X` not allowed here")),
        RawAtom::Pair(..) => Err(ParseError::new(
            0,
            "mixed arity: paired atom in a single-label formula",
        )),
    })
}

/// Parses a propositional formula over paired labels (no `G`).
pub fn parse_pair_prop(src: &str) -> Result<PairFormula, ParseError> {
    let (raw, always) = parse_raw(src)?;
    if always {
        return Err(ParseError::new(0, "temporal operator `G` not allowed here"));
    }
    to_pairs(&raw)
}

fn to_pairs(raw: &Expr<RawAtom>) -> Result<PairFormula, ParseError> {
    raw.try_map_atoms(&mut |a| match a {
        RawAtom::Pair(p, q) => Ok(PairAtom::new(p.clone(), q.clone())),
        RawAtom::Plain(_) => Err(ParseError::new(
            0,
            "mixed arity: single atom in a paired formula",
        )),
        RawAtom::Next(_) => Err(ParseError::new(
            0,
            "temporal operator `X` not allowed in a paired formula",
        )),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum RawAtom {
    Plain(Prop),
    Next(Prop),
    Pair(Prop, Prop),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Always,
    Next,
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Comma,
    Ident(String),
    True,
    False,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => out.push((start, Tok::Not)),
            b'&' => out.push((start, Tok::And)),
            b'|' => out.push((start, Tok::Or)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b',' => out.push((start, Tok::Comma)),
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((start, Tok::Implies));
                    i += 1;
                } else {
                    return Err(ParseError::new(start, "expected `->`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                let word = &src[start..i];
                let tok = match word {
                    "G" => Tok::Always,
                    "X" => Tok::Next,
                    "true" | "True" | "TRUE" => Tok::True,
                    "false" | "False" | "FALSE" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

fn parse_raw(src: &str) -> Result<(Expr<RawAtom>, bool), ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
        depth: 0,
    };
    let always = p.eat(&Tok::Always);
    let expr = if always { p.unary()? } else { p.expr()? };
    if let Some((off, tok)) = p.toks.get(p.pos) {
        return Err(ParseError::new(*off, format!("unexpected token {tok:?}")));
    }
    Ok((expr, always))
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(ParseError::new(self.offset(), format!("expected {what}")))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(self.offset(), "formula nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr<RawAtom>, ParseError> {
        self.enter()?;
        let lhs = self.or()?;
        let out = if self.eat(&Tok::Implies) {
            Expr::implies(lhs, self.expr()?)
        } else {
            lhs
        };
        self.depth -= 1;
        Ok(out)
    }

    fn or(&mut self) -> Result<Expr<RawAtom>, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = Expr::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr<RawAtom>, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = Expr::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr<RawAtom>, ParseError> {
        self.enter()?;
        let out = match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Expr::not(self.unary()?)
            }
            Some(Tok::Next) => {
                self.pos += 1;
                let p = self.atom()?;
                Expr::Atom(RawAtom::Next(p))
            }
            Some(Tok::Always) => {
                return Err(ParseError::new(
                    self.offset(),
                    "`G` may only appear once, at the start of a formula",
                ))
            }
            _ => self.primary()?,
        };
        self.depth -= 1;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Prop, ParseError> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(n)) => {
                self.pos += 1;
                Ok(Prop::Named(n))
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Prop::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Prop::False)
            }
            _ => Err(ParseError::new(off, "expected a proposition")),
        }
    }

    fn primary(&mut self) -> Result<Expr<RawAtom>, ParseError> {
        if self.eat(&Tok::LParen) {
            let inner_off = self.offset();
            let inner = self.expr()?;
            if self.eat(&Tok::Comma) {
                let first = match inner {
                    Expr::Atom(RawAtom::Plain(p)) => p,
                    _ => {
                        return Err(ParseError::new(
                            inner_off,
                            "first element of a pair must be a proposition",
                        ))
                    }
                };
                let second = self.atom()?;
                self.expect(&Tok::RParen, "`)` closing the pair")?;
                return Ok(Expr::Atom(RawAtom::Pair(first, second)));
            }
            self.expect(&Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        Ok(Expr::Atom(RawAtom::Plain(self.atom()?)))
    }
}
