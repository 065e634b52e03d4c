//! Text grammar for free-algebra and Jordan expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-'? factor ('*' factor)*
//! factor  := INT ('/' INT)? | IDENT | 'one' | '(' expr ')'
//!          | 'rev' '(' expr ')' | 'sym' '(' expr ')' | 'sq' '(' expr ')'
//!          | 'circ' '(' expr ',' expr ')'
//!          | 'U' '(' expr ';' expr ')'            -- U(b; a) = b·a·b
//!          | 'Ulin' '(' expr ',' expr ';' expr ')' -- Ulin(b, c; a) = bac + cab
//! ```
//!
//! An expression built only from generators, `one`, scalars, sums and the
//! Jordan constructors parses to a [`JordanElement`] with its recipe; anything
//! that uses the associative product of two non-scalars, `rev` or `sym` parses
//! to a plain [`FreePoly`].

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::freealg::{FreeAlgebra, FreePoly};
use crate::jordan::{circ, u_apply, u_lin, JordanElement};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("denominator vanishes in the coefficient field")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

/// Result of parsing: a Jordan element (with recipe) or a general polynomial.
#[derive(Debug, Clone)]
pub enum Expr {
    Jordan(JordanElement),
    Poly(FreePoly),
}

impl Expr {
    pub fn value(&self) -> &FreePoly {
        match self {
            Expr::Jordan(j) => j.value(),
            Expr::Poly(p) => p,
        }
    }

    pub fn into_value(self) -> FreePoly {
        match self {
            Expr::Jordan(j) => j.value().clone(),
            Expr::Poly(p) => p,
        }
    }

    pub fn as_jordan(&self) -> Option<&JordanElement> {
        match self {
            Expr::Jordan(j) => Some(j),
            Expr::Poly(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/(),;".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                position: pos,
                kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Val {
    Scalar(Scalar),
    Jordan(JordanElement),
    Poly(FreePoly),
}

struct Parser<'a> {
    alg: &'a Arc<FreeAlgebra>,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos(),
            kind: ParseErrorKind::Syntax(msg.into()),
        })
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.at), Some((_, Tok::Sym(s))) if *s == c)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_sym(c) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn poly(&self, v: &Val) -> FreePoly {
        match v {
            Val::Scalar(s) => FreePoly::constant(self.alg, s.clone()),
            Val::Jordan(j) => j.value().clone(),
            Val::Poly(p) => p.clone(),
        }
    }

    fn jordan(&self, v: &Val) -> Option<JordanElement> {
        match v {
            Val::Scalar(s) => Some(JordanElement::scale(s, &JordanElement::unit(self.alg))),
            Val::Jordan(j) => Some(j.clone()),
            Val::Poly(_) => None,
        }
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.peek_sym('+') {
                1
            } else if self.peek_sym('-') {
                -1
            } else {
                return Ok(acc);
            };
            self.at += 1;
            let mut rhs = self.term()?;
            if sign < 0 {
                rhs = self.negate(rhs);
            }
            acc = self.add(acc, rhs);
        }
    }

    fn negate(&self, v: Val) -> Val {
        let m1 = self.alg.field.from_i64(-1);
        match v {
            Val::Scalar(s) => Val::Scalar(-s),
            Val::Jordan(j) => Val::Jordan(JordanElement::scale(&m1, &j)),
            Val::Poly(p) => Val::Poly(-&p),
        }
    }

    fn add(&self, a: Val, b: Val) -> Val {
        match (&a, &b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x + y),
            (Val::Poly(_), _) | (_, Val::Poly(_)) => Val::Poly(&self.poly(&a) + &self.poly(&b)),
            _ => {
                let (ja, jb) = (
                    self.jordan(&a).expect("jordan"),
                    self.jordan(&b).expect("jordan"),
                );
                let mut parts = match ja.recipe().as_ref() {
                    crate::jordan::Recipe::Sum(_) => flatten(&ja, self.alg),
                    _ => vec![ja],
                };
                parts.push(jb);
                Val::Jordan(JordanElement::sum(self.alg, &parts))
            }
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let negative = if self.peek_sym('-') {
            self.at += 1;
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while self.peek_sym('*') {
            self.at += 1;
            let rhs = self.factor()?;
            acc = self.mul(acc, rhs);
        }
        Ok(if negative { self.negate(acc) } else { acc })
    }

    fn mul(&self, a: Val, b: Val) -> Val {
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(&x * &y),
            (Val::Scalar(s), Val::Jordan(j)) | (Val::Jordan(j), Val::Scalar(s)) => {
                Val::Jordan(JordanElement::scale(&s, &j))
            }
            (a, b) => Val::Poly(&self.poly(&a) * &self.poly(&b)),
        }
    }

    fn args(&mut self, commas: usize, semis: usize) -> Result<Vec<Val>, ParseError> {
        self.expect_sym('(')?;
        let mut out = vec![self.expr()?];
        for _ in 0..commas {
            self.expect_sym(',')?;
            out.push(self.expr()?);
        }
        for _ in 0..semis {
            self.expect_sym(';')?;
            out.push(self.expr()?);
        }
        self.expect_sym(')')?;
        Ok(out)
    }

    fn factor(&mut self) -> Result<Val, ParseError> {
        let Some((pos, tok)) = self.toks.get(self.at).cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Int(n) => {
                self.at += 1;
                let field = self.alg.field;
                if self.peek_sym('/') {
                    self.at += 1;
                    let Some((_, Tok::Int(d))) = self.toks.get(self.at).cloned() else {
                        return self.err("expected denominator");
                    };
                    self.at += 1;
                    field
                        .from_ratio(&n, &d)
                        .map(Val::Scalar)
                        .map_err(|_| ParseError {
                            position: pos,
                            kind: ParseErrorKind::ZeroDenominator,
                        })
                } else {
                    Ok(Val::Scalar(field.from_bigint(&n)))
                }
            }
            Tok::Sym('(') => {
                self.at += 1;
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
            Tok::Ident(name) => {
                self.at += 1;
                self.ident(pos, &name)
            }
        }
    }

    fn ident(&mut self, pos: usize, name: &str) -> Result<Val, ParseError> {
        match name {
            "one" => Ok(Val::Jordan(JordanElement::unit(self.alg))),
            "rev" => {
                let a = self.args(0, 0)?;
                Ok(Val::Poly(self.poly(&a[0]).reverse()))
            }
            "sym" => {
                let a = self.args(0, 0)?;
                Ok(Val::Poly(self.poly(&a[0]).symmetrize()))
            }
            "sq" => {
                let a = self.args(0, 0)?;
                Ok(match self.jordan(&a[0]) {
                    Some(j) => Val::Jordan(JordanElement::square(&j)),
                    None => {
                        let p = self.poly(&a[0]);
                        Val::Poly(&p * &p)
                    }
                })
            }
            "circ" => {
                let a = self.args(1, 0)?;
                Ok(match (self.jordan(&a[0]), self.jordan(&a[1])) {
                    (Some(x), Some(y)) => Val::Jordan(JordanElement::circ(&x, &y)),
                    _ => Val::Poly(circ(&self.poly(&a[0]), &self.poly(&a[1]))),
                })
            }
            "U" => {
                let a = self.args(0, 1)?;
                Ok(match (self.jordan(&a[0]), self.jordan(&a[1])) {
                    (Some(b), Some(x)) => Val::Jordan(JordanElement::u(&b, &x)),
                    _ => Val::Poly(u_apply(&self.poly(&a[0]), &self.poly(&a[1]))),
                })
            }
            "Ulin" => {
                let a = self.args(1, 1)?;
                let js: Option<Vec<JordanElement>> = a.iter().map(|v| self.jordan(v)).collect();
                Ok(match js {
                    Some(j) => Val::Jordan(JordanElement::ulin(&j[0], &j[1], &j[2])),
                    None => Val::Poly(u_lin(
                        &self.poly(&a[0]),
                        &self.poly(&a[1]),
                        &self.poly(&a[2]),
                    )),
                })
            }
            _ => match self.alg.gens.index_of(name) {
                Ok(i) => Ok(Val::Jordan(JordanElement::generator(self.alg, i))),
                Err(_) => Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::UnknownGenerator(name.to_string()),
                }),
            },
        }
    }
}

fn flatten(j: &JordanElement, alg: &Arc<FreeAlgebra>) -> Vec<JordanElement> {
    match j.recipe().as_ref() {
        crate::jordan::Recipe::Sum(parts) => parts
            .iter()
            .map(|r| JordanElement::from_recipe(alg, r.as_ref().clone()))
            .collect(),
        _ => vec![j.clone()],
    }
}

pub fn parse_expr(text: &str, alg: &Arc<FreeAlgebra>) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        alg,
        toks,
        at: 0,
        end: text.len(),
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(match v {
        Val::Scalar(s) => Expr::Poly(FreePoly::constant(alg, s)),
        Val::Jordan(j) => Expr::Jordan(j),
        Val::Poly(q) => Expr::Poly(q),
    })
}

/// Parses and returns only the polynomial value.
pub fn parse_poly(text: &str, alg: &Arc<FreeAlgebra>) -> Result<FreePoly, ParseError> {
    parse_expr(text, alg).map(Expr::into_value)
}
