//! The algebra builder language: `expr := NAME "(" (arg ("," arg)*)? ")" | NAT`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Nat,
    Expr,
}

/// Registered constructors and the kinds of their arguments.
pub const CONSTRUCTORS: &[(&str, &[ArgKind])] = &[
    ("bool", &[ArgKind::Nat]),
    ("godel_chain", &[ArgKind::Nat]),
    ("mv_chain", &[ArgKind::Nat]),
    ("nk", &[ArgKind::Nat]),
    ("rat01", &[]),
    ("two0", &[]),
    ("lift", &[ArgKind::Expr]),
    ("reduct0", &[ArgKind::Expr]),
    ("direct_product", &[ArgKind::Expr, ArgKind::Expr]),
    ("mv_closure", &[ArgKind::Expr]),
    ("product_closure", &[ArgKind::Expr]),
    ("triple", &[ArgKind::Expr, ArgKind::Nat, ArgKind::Expr]),
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BuilderExpr {
    Nat(u64),
    Call { name: String, args: Vec<BuilderExpr> },
}

impl BuilderExpr {
    pub fn call(name: &str, args: Vec<BuilderExpr>) -> Self {
        BuilderExpr::Call {
            name: name.to_string(),
            args,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            BuilderExpr::Nat(n) => Some(*n),
            BuilderExpr::Call { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let BuilderExpr::Call { name, args } = self else {
            return Ok(());
        };
        let Some((_, kinds)) = CONSTRUCTORS.iter().find(|(n, _)| n == name) else {
            return Err(Error::UnknownConstructor(name.clone()));
        };
        let describe = |ks: &[ArgKind]| -> String {
            if ks.is_empty() {
                return "no arguments".into();
            }
            ks.iter()
                .map(|k| match k {
                    ArgKind::Nat => "nat",
                    ArgKind::Expr => "expr",
                })
                .collect::<Vec<_>>()
                .join(", ")
        };
        let actual: Vec<ArgKind> = args
            .iter()
            .map(|a| match a {
                BuilderExpr::Nat(_) => ArgKind::Nat,
                BuilderExpr::Call { .. } => ArgKind::Expr,
            })
            .collect();
        if actual.as_slice() != *kinds {
            return Err(Error::Arity {
                name: name.clone(),
                expected: describe(kinds),
                got: describe(&actual),
            });
        }
        args.iter().try_for_each(BuilderExpr::validate)
    }
}

impl fmt::Display for BuilderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuilderExpr::Nat(n) => write!(f, "{n}"),
            BuilderExpr::Call { name, args } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{}`", c as char))
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src.as_bytes()[self.pos]) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<BuilderExpr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                match digits.parse() {
                    Ok(n) => Ok(BuilderExpr::Nat(n)),
                    Err(_) => self.error("natural number out of range"),
                }
            }
            Some(c) if c.is_ascii_lowercase() || c == b'_' => {
                let name = self
                    .take_while(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_')
                    .to_string();
                self.expect(b'(')?;
                let mut args = Vec::new();
                if self.peek() != Some(b')') {
                    loop {
                        args.push(self.expr()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b')')?;
                Ok(BuilderExpr::Call { name, args })
            }
            Some(_) => self.error("expected a constructor name or a natural number"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses and validates a builder expression against [`CONSTRUCTORS`].
pub fn parse_builder(src: &str) -> Result<BuilderExpr> {
    let mut c = Cursor { src, pos: 0 };
    let e = c.expr()?;
    if c.peek().is_some() {
        return c.error("trailing input");
    }
    e.validate()?;
    Ok(e)
}
