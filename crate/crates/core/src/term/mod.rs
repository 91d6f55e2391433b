//! Terms and equations over the residuated-lattice signature
//! `(*, ->, /\, \/, 0, 1)`, plus the builder language used to name algebras.

mod builder;
mod parser;

use std::fmt;

pub use builder::{parse_builder, ArgKind, BuilderExpr, CONSTRUCTORS};
pub use parser::{parse_equation, parse_term};

/// The six basic symbols. Every signature is a subset of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Mul,
    Imp,
    Meet,
    Join,
    One,
    Zero,
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [
        Symbol::Mul,
        Symbol::Imp,
        Symbol::Meet,
        Symbol::Join,
        Symbol::One,
        Symbol::Zero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Mul => "mul",
            Symbol::Imp => "imp",
            Symbol::Meet => "meet",
            Symbol::Join => "join",
            Symbol::One => "one",
            Symbol::Zero => "zero",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Symbol::One | Symbol::Zero => 0,
            _ => 2,
        }
    }
}

/// Binary operation symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Mul,
    Imp,
    Meet,
    Join,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Mul, BinOp::Imp, BinOp::Meet, BinOp::Join];

    pub fn symbol(self) -> Symbol {
        match self {
            BinOp::Mul => Symbol::Mul,
            BinOp::Imp => Symbol::Imp,
            BinOp::Meet => Symbol::Meet,
            BinOp::Join => Symbol::Join,
        }
    }

    fn token(self) -> &'static str {
        match self {
            BinOp::Mul => "*",
            BinOp::Imp => "->",
            BinOp::Meet => "/\\",
            BinOp::Join => "\\/",
        }
    }

    // Binding strength; higher binds tighter.
    fn level(self) -> u8 {
        match self {
            BinOp::Imp => 1,
            BinOp::Join => 2,
            BinOp::Meet => 3,
            BinOp::Mul => 4,
        }
    }
}

/// Which symbols are present. `mul`, `imp`, `meet`, `join` and `one` are always
/// there; only `zero` varies (0-free signatures omit it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    zero: bool,
}

impl Signature {
    pub const FULL: Signature = Signature { zero: true };
    pub const ZERO_FREE: Signature = Signature { zero: false };

    pub fn has_zero(self) -> bool {
        self.zero
    }

    pub fn contains(self, s: Symbol) -> bool {
        s != Symbol::Zero || self.zero
    }

    /// `(name, arity)` for every present symbol.
    pub fn symbols(self) -> Vec<(&'static str, usize)> {
        Symbol::ALL
            .iter()
            .filter(|s| self.contains(**s))
            .map(|s| (s.name(), s.arity()))
            .collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.zero { "full" } else { "zero-free" })
    }
}

/// A term over variables `x1, x2, ...` (stored zero-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    One,
    Zero,
    Bin(BinOp, Box<Term>, Box<Term>),
}

impl Term {
    /// Variable `x{i}`, one-based as in the concrete syntax.
    pub fn var(i: usize) -> Term {
        assert!(i >= 1, "variables start at x1");
        Term::Var(i - 1)
    }

    pub fn bin(op: BinOp, l: Term, r: Term) -> Term {
        Term::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::bin(BinOp::Mul, l, r)
    }

    pub fn imp(l: Term, r: Term) -> Term {
        Term::bin(BinOp::Imp, l, r)
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::bin(BinOp::Meet, l, r)
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::bin(BinOp::Join, l, r)
    }

    /// `~t`, i.e. `t -> 0`.
    pub fn neg(t: Term) -> Term {
        Term::imp(t, Term::Zero)
    }

    /// Number of variables needed to evaluate the term (largest index used).
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::One | Term::Zero => 0,
            Term::Bin(_, l, r) => l.arity().max(r.arity()),
        }
    }

    pub fn uses_zero(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) | Term::One => false,
            Term::Bin(_, l, r) => l.uses_zero() || r.uses_zero(),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<bool>) {
        match self {
            Term::Var(i) => {
                if out.len() <= *i {
                    out.resize(i + 1, false);
                }
                out[*i] = true;
            }
            Term::One | Term::Zero => {}
            Term::Bin(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::Bin(op, _, _) => op.level(),
            _ => u8::MAX,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{}", i + 1),
            Term::One => f.write_str("1"),
            Term::Zero => f.write_str("0"),
            Term::Bin(op, l, r) => {
                // `->` is right-associative, the others chain to the left.
                let (lp, rp) = if *op == BinOp::Imp {
                    (l.level() <= op.level(), r.level() < op.level())
                } else {
                    (l.level() < op.level(), r.level() <= op.level())
                };
                write_paren(l, lp, f)?;
                write!(f, " {} ", op.token())?;
                write_paren(r, rp, f)
            }
        }
    }
}

fn write_paren(t: &Term, paren: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if paren {
        f.write_str("(")?;
        t.write(f)?;
        f.write_str(")")
    } else {
        t.write(f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// `lhs = rhs` over `variables` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub variables: usize,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let variables = lhs.arity().max(rhs.arity());
        Equation {
            lhs,
            rhs,
            variables,
        }
    }

    pub fn uses_zero(&self) -> bool {
        self.lhs.uses_zero() || self.rhs.uses_zero()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Named equations that recur throughout the workbench.
pub mod laws {
    use super::{parse_equation, Equation, Signature};

    fn eq(src: &str) -> Equation {
        parse_equation(src, Signature::FULL).expect("built-in law parses")
    }

    pub fn divisibility() -> Equation {
        eq("x1 /\\ x2 = x1 * (x1 -> x2)")
    }

    pub fn prelinearity() -> Equation {
        eq("(x1 -> x2) \\/ (x2 -> x1) = 1")
    }

    pub fn involutivity() -> Equation {
        eq("~~x1 = x1")
    }

    pub fn idempotency() -> Equation {
        eq("x1 * x1 = x1")
    }

    pub fn product_identity() -> Equation {
        eq("~x1 \\/ ((x1 -> (x1 * x2)) -> x2) = 1")
    }

    pub fn excluded_middle() -> Equation {
        eq("x1 \\/ ~x1 = 1")
    }

    /// Tanaka's equation, which singles out Wajsberg hoops among hoops.
    pub fn wajsberg() -> Equation {
        eq("(x1 -> x2) -> x2 = (x2 -> x1) -> x1")
    }

    /// Join expressed through product and implication in BL-algebras.
    pub fn join_definable() -> Equation {
        eq("x1 \\/ x2 = ((x1 -> x2) -> x2) /\\ ((x2 -> x1) -> x1)")
    }
}
