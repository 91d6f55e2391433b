//! Infinite cancellative hoops with deterministic samplers.

use num::{BigRational, One, Signed, Zero};

use super::{Carrier, Element};
use crate::term::BinOp;

/// Vectors of naturals in graded lexicographic order: by total degree, then
/// lexicographically within a degree.
pub fn nat_vectors(dim: usize, n: usize) -> Vec<Vec<u64>> {
    fn compositions(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, n: usize) {
        if out.len() >= n {
            return;
        }
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            compositions(total - first, parts - 1, prefix, out, n);
            prefix.pop();
        }
    }
    if dim == 0 {
        return if n == 0 { vec![] } else { vec![vec![]] };
    }
    let mut out = Vec::with_capacity(n);
    let mut degree = 0;
    while out.len() < n {
        compositions(degree, dim, &mut Vec::with_capacity(dim), &mut out, n);
        degree += 1;
    }
    out.truncate(n);
    out
}

/// Rationals in `(0, 1]` by Stern-Brocot level, ascending within a level:
/// `1, 1/2, 1/3, 2/3, 1/4, 2/5, 3/5, 3/4, ...`.
pub fn pos_rationals(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(BigRational::one());
    // Boundary fractions as (numerator, denominator).
    let mut frontier: Vec<(u64, u64)> = vec![(0, 1), (1, 1)];
    while out.len() < n {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for w in frontier.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mediant = (a.0 + b.0, a.1 + b.1);
            next.push(a);
            next.push(mediant);
            if out.len() < n {
                out.push(BigRational::new(mediant.0.into(), mediant.1.into()));
            }
        }
        next.push(*frontier.last().expect("frontier is never empty"));
        frontier = next;
    }
    out
}

/// `N^k` as a cancellative hoop: unit is the zero vector, product is
/// addition, `x -> y` is truncated subtraction `y - x`. The hoop order is the
/// reverse of the componentwise numeric order, so meet is componentwise max
/// and join is componentwise min.
#[derive(Clone, Debug)]
pub struct NatVecHoop {
    pub dim: usize,
}

impl NatVecHoop {
    fn zip(x: &Element, y: &Element, f: impl Fn(u64, u64) -> u64) -> Element {
        match (x, y) {
            (Element::Nat(a), Element::Nat(b)) => {
                Element::Nat(a.iter().zip(b).map(|(p, q)| f(*p, *q)).collect())
            }
            _ => unreachable!("natural-vector hoop applied to {x} and {y}"),
        }
    }
}

impl Carrier for NatVecHoop {
    fn has_zero(&self) -> bool {
        false
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Nat(v) if v.len() == self.dim)
    }

    fn one(&self) -> Element {
        Element::Nat(vec![0; self.dim])
    }

    fn zero(&self) -> Option<Element> {
        None
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        match op {
            BinOp::Mul => Self::zip(x, y, |a, b| a + b),
            BinOp::Imp => Self::zip(x, y, |a, b| b.saturating_sub(a)),
            BinOp::Meet => Self::zip(x, y, u64::max),
            BinOp::Join => Self::zip(x, y, u64::min),
        }
    }

    fn elements(&self) -> Option<Vec<Element>> {
        (self.dim == 0).then(|| vec![Element::Nat(vec![])])
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        nat_vectors(self.dim, n).into_iter().map(Element::Nat).collect()
    }

    fn render(&self, x: &Element) -> String {
        match x {
            Element::Nat(v) if self.dim == 1 => match v[0] {
                0 => "1".into(),
                1 => "c".into(),
                k => format!("c^{k}"),
            },
            Element::Nat(v) if v.iter().all(|k| *k == 0) => "1".into(),
            other => other.to_string(),
        }
    }
}

/// Rationals in `(0, 1]` under numeric product, `x -> y = min(1, y / x)`,
/// with the numeric order.
#[derive(Clone, Debug, Default)]
pub struct PosRatHoop;

impl Carrier for PosRatHoop {
    fn has_zero(&self) -> bool {
        false
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Rat(q) if q.is_positive() && *q <= BigRational::one())
    }

    fn one(&self) -> Element {
        Element::Rat(BigRational::one())
    }

    fn zero(&self) -> Option<Element> {
        None
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        let (Element::Rat(a), Element::Rat(b)) = (x, y) else {
            unreachable!("rational hoop applied to {x} and {y}");
        };
        debug_assert!(!a.is_zero());
        Element::Rat(match op {
            BinOp::Mul => a * b,
            BinOp::Imp => (b / a).min(BigRational::one()),
            BinOp::Meet => a.min(b).clone(),
            BinOp::Join => a.max(b).clone(),
        })
    }

    fn elements(&self) -> Option<Vec<Element>> {
        None
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        pos_rationals(n).into_iter().map(Element::Rat).collect()
    }

    fn render(&self, x: &Element) -> String {
        x.to_string()
    }
}
