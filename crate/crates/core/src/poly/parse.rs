//! Recursive-descent parser for polynomial expressions:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' int)?
//! base   := int | 'x' | 'Tr' '{' int '}' '(' expr ')' | '(' expr ')'
//! int    := '-'? [0-9]+
//! ```
//!
//! Integer literals are element indices; `-k` is the additive inverse of
//! element `k`. Whitespace is ignored.

use std::sync::Arc;

use super::{negative_exponent, PolyFq};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Const(i64),
    Var,
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i64),
    Trace { degree: u32, arg: Box<ExprAst> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    X,
    Tr,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i]
                    .parse::<i64>()
                    .map_err(|_| syntax(start, "integer literal too large"))?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'x' => Tok::X,
            b'T' if bytes.get(i + 1) == Some(&b'r') => {
                i += 1;
                Tok::Tr
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character '{ch}'")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.base()?;
        if self.eat(&Tok::Caret) {
            let e = self.int()?;
            Ok(ExprAst::Pow(Box::new(base), e))
        } else {
            Ok(base)
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.at += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(syntax(self.pos(), "expected integer")),
        }
    }

    fn base(&mut self) -> Result<ExprAst> {
        match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Minus) => Ok(ExprAst::Const(self.int()?)),
            Some(Tok::X) => {
                self.at += 1;
                Ok(ExprAst::Var)
            }
            Some(Tok::Tr) => {
                self.at += 1;
                self.expect(Tok::LBrace, "'{'")?;
                let dpos = self.pos();
                let d = self.int()?;
                let degree = u32::try_from(d).map_err(|_| syntax(dpos, "bad trace degree"))?;
                self.expect(Tok::RBrace, "'}'")?;
                self.expect(Tok::LParen, "'('")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(ExprAst::Trace {
                    degree,
                    arg: Box::new(arg),
                })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(syntax(self.pos(), "expected integer, 'x', 'Tr' or '('")),
        }
    }
}

/// Parses text into an expression tree without reference to a field.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

impl ExprAst {
    /// Evaluates the tree symbolically to a reduced polynomial.
    pub fn to_poly(&self, ctx: &Arc<FieldCtx>) -> Result<PolyFq> {
        let q = ctx.q();
        Ok(match self {
            ExprAst::Const(v) => {
                let k = v.unsigned_abs();
                if k >= q as u64 {
                    return Err(Error::ConstantOutOfRange {
                        value: *v as i128,
                        q,
                    });
                }
                let c = Elem(k as u32);
                PolyFq::constant(ctx, if *v < 0 { ctx.neg(c) } else { c })
            }
            ExprAst::Var => PolyFq::x(ctx),
            ExprAst::Add(a, b) => a.to_poly(ctx)?.add(&b.to_poly(ctx)?)?,
            ExprAst::Sub(a, b) => a.to_poly(ctx)?.sub(&b.to_poly(ctx)?)?,
            ExprAst::Mul(a, b) => a.to_poly(ctx)?.mul(&b.to_poly(ctx)?)?,
            ExprAst::Pow(b, e) => {
                let base = b.to_poly(ctx)?;
                if *e >= 0 {
                    base.pow(*e as u64)
                } else {
                    base.pow(negative_exponent(e.unsigned_abs(), q))
                }
            }
            ExprAst::Trace { degree, arg } => {
                let n = ctx.n();
                if *degree == 0 || !n.is_multiple_of(*degree) {
                    return Err(Error::BadTraceDegree { d: *degree, n });
                }
                arg.to_poly(ctx)?.trace(*degree)?
            }
        })
    }
}

pub fn parse_poly_expr(text: &str, ctx: &Arc<FieldCtx>) -> Result<PolyFq> {
    parse_expr(text)?.to_poly(ctx)
}
