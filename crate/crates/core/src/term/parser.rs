//! Recursive descent parser for terms and equations.
//!
//! ```text
//! term  := imp
//! imp   := or ("->" imp)?
//! or    := and ("\/" and)*
//! and   := mul ("/\" mul)*
//! mul   := unary ("*" unary)*
//! unary := "~" unary | atom ("^" NAT)?
//! atom  := "0" | "1" | "x" NAT | "(" term ")"
//! ```

use super::{BinOp, Equation, Signature, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    Var(u64),
    Star,
    Arrow,
    Meet,
    Join,
    Tilde,
    Caret,
    LParen,
    RParen,
    Eof,
}

fn lex(src: &str, base: usize) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let nat = |i: &mut usize| -> Result<u64> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        src[start..*i].parse::<u64>().map_err(|_| Error::Syntax {
            offset: base + start,
            message: "expected a natural number".into(),
        })
    };
    while i < bytes.len() {
        let c = bytes[i];
        let at = base + i;
        if !c.is_ascii() {
            return Err(Error::Syntax {
                offset: at,
                message: "non-ASCII input".into(),
            });
        }
        let two = |s: &[u8]| bytes[i..].starts_with(s);
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                out.push((Tok::Nat(nat(&mut i)?), at));
                continue;
            }
            b'x' => {
                i += 1;
                if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                    return Err(Error::Syntax {
                        offset: at,
                        message: "variable needs an index, e.g. x1".into(),
                    });
                }
                out.push((Tok::Var(nat(&mut i)?), at));
                continue;
            }
            b'*' => Tok::Star,
            b'~' => Tok::Tilde,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if two(b"->") => {
                i += 1;
                Tok::Arrow
            }
            b'/' if two(b"/\\") => {
                i += 1;
                Tok::Meet
            }
            b'\\' if two(b"\\/") => {
                i += 1;
                Tok::Join
            }
            _ => {
                return Err(Error::Syntax {
                    offset: at,
                    message: format!("unexpected character `{}`", c as char),
                })
            }
        };
        i += 1;
        out.push((tok, at));
    }
    out.push((Tok::Eof, base + bytes.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: Signature,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn imp(&mut self) -> Result<Term> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Term::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn chain(
        &mut self,
        tok: Tok,
        op: BinOp,
        next: fn(&mut Self) -> Result<Term>,
    ) -> Result<Term> {
        let mut acc = next(self)?;
        while *self.peek() == tok {
            self.bump();
            let rhs = next(self)?;
            acc = Term::bin(op, acc, rhs);
        }
        Ok(acc)
    }

    fn or(&mut self) -> Result<Term> {
        self.chain(Tok::Join, BinOp::Join, Self::and)
    }

    fn and(&mut self) -> Result<Term> {
        self.chain(Tok::Meet, BinOp::Meet, Self::mul)
    }

    fn mul(&mut self) -> Result<Term> {
        self.chain(Tok::Star, BinOp::Mul, Self::unary)
    }

    fn unary(&mut self) -> Result<Term> {
        if *self.peek() == Tok::Tilde {
            let at = self.offset();
            self.bump();
            if !self.sig.has_zero() {
                return Err(Error::Syntax {
                    offset: at,
                    message: "negation needs the constant 0, absent from a zero-free signature"
                        .into(),
                });
            }
            let inner = self.unary()?;
            return Ok(Term::neg(inner));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let n = match self.bump() {
                Tok::Nat(n) if n >= 1 => n,
                _ => {
                    self.pos -= 1;
                    return self.error("exponent must be a natural number >= 1");
                }
            };
            let mut acc = base.clone();
            for _ in 1..n {
                acc = Term::mul(acc, base.clone());
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Term> {
        let at = self.offset();
        match self.bump() {
            Tok::Nat(0) => {
                if !self.sig.has_zero() {
                    return Err(Error::Syntax {
                        offset: at,
                        message: "constant 0 is absent from a zero-free signature".into(),
                    });
                }
                Ok(Term::Zero)
            }
            Tok::Nat(1) => Ok(Term::One),
            Tok::Var(0) => Err(Error::Syntax {
                offset: at,
                message: "variables start at x1".into(),
            }),
            Tok::Var(i) => Ok(Term::Var(i as usize - 1)),
            Tok::LParen => {
                let t = self.imp()?;
                if *self.peek() != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(t)
            }
            Tok::Eof => self.error("unexpected end of input"),
            other => {
                self.pos -= 1;
                self.error(format!("unexpected token {other:?}"))
            }
        }
    }
}

fn parse_fragment(src: &str, base: usize, sig: Signature) -> Result<Term> {
    let mut p = Parser {
        toks: lex(src, base)?,
        pos: 0,
        sig,
    };
    let t = p.imp()?;
    if *p.peek() != Tok::Eof {
        return p.error("trailing input");
    }
    Ok(t)
}

fn check_contiguous(vars: &[bool]) -> Result<()> {
    if let Some(gap) = vars.iter().position(|used| !used) {
        return Err(Error::Invalid(format!(
            "variables must be contiguous from x1, but x{} is unused",
            gap + 1
        )));
    }
    Ok(())
}

/// Parses a term. Variables must be contiguous from `x1`.
pub fn parse_term(src: &str, sig: Signature) -> Result<Term> {
    let t = parse_fragment(src, 0, sig)?;
    let mut vars = Vec::new();
    t.collect_vars(&mut vars);
    check_contiguous(&vars)?;
    Ok(t)
}

/// Parses `lhs = rhs`. The variables of both sides together must be contiguous.
pub fn parse_equation(src: &str, sig: Signature) -> Result<Equation> {
    let mut eqs = src.match_indices('=');
    let Some((at, _)) = eqs.next() else {
        return Err(Error::Syntax {
            offset: src.len(),
            message: "equation is missing `=`".into(),
        });
    };
    if let Some((second, _)) = eqs.next() {
        return Err(Error::Syntax {
            offset: second,
            message: "equation has more than one `=`".into(),
        });
    }
    let lhs = parse_fragment(&src[..at], 0, sig)?;
    let rhs = parse_fragment(&src[at + 1..], at + 1, sig)?;
    let mut vars = Vec::new();
    lhs.collect_vars(&mut vars);
    rhs.collect_vars(&mut vars);
    check_contiguous(&vars)?;
    Ok(Equation::new(lhs, rhs))
}
