use std::fmt;

use num::BigRational;

/// A carrier element. The variant records which kind of carrier produced it;
/// each algebra accepts only the shapes it can generate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Index into a finite operation table, with the table's tag.
    Fin(u64, usize),
    /// Vector of naturals; the unit is the zero vector.
    Nat(Vec<u64>),
    /// Exact rational `q` with `0 < q <= 1`.
    Rat(BigRational),
    /// `None` is the adjoined bottom of a lifting.
    Lifted(Option<Box<Element>>),
    /// `(a, i)` in an MV-closure.
    Mv(Box<Element>, bool),
    /// Canonical representative `[b, c]` of a triple-product class.
    Triple(Box<Element>, Box<Element>),
    /// Pair in a direct product.
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn lifted(x: Element) -> Element {
        Element::Lifted(Some(Box::new(x)))
    }

    pub fn bottom() -> Element {
        Element::Lifted(None)
    }

    pub fn mv(x: Element, bit: bool) -> Element {
        Element::Mv(Box::new(x), bit)
    }

    pub fn triple(b: Element, c: Element) -> Element {
        Element::Triple(Box::new(b), Box::new(c))
    }

    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn nat(v: &[u64]) -> Element {
        Element::Nat(v.to_vec())
    }

    pub fn rat(n: i64, d: i64) -> Element {
        Element::Rat(BigRational::new(n.into(), d.into()))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Fin(_, i) => write!(f, "#{i}"),
            Element::Nat(v) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Element::Rat(q) => write!(f, "{q}"),
            Element::Lifted(None) => f.write_str("bot"),
            Element::Lifted(Some(x)) => write!(f, "{x}"),
            Element::Mv(x, bit) => write!(f, "({x},{})", u8::from(*bit)),
            Element::Triple(b, c) => write!(f, "[{b},{c}]"),
            Element::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}
