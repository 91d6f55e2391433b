use std::sync::Arc;

use crate::algebra::{Algebra, Carrier, Certificate, Element, ElementPredicate, Label};
use crate::error::{Error, Result};
use crate::term::BinOp;

/// `2 + H`: a new bottom below a 0-free algebra.
struct LiftCarrier {
    inner: Algebra,
}

fn inner(x: &Element) -> Option<&Element> {
    match x {
        Element::Lifted(v) => v.as_deref(),
        _ => unreachable!("lifting applied to {x}"),
    }
}

impl Carrier for LiftCarrier {
    fn has_zero(&self) -> bool {
        true
    }

    fn contains(&self, x: &Element) -> bool {
        match x {
            Element::Lifted(None) => true,
            Element::Lifted(Some(v)) => self.inner.contains(v),
            _ => false,
        }
    }

    fn one(&self) -> Element {
        Element::lifted(self.inner.one())
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::bottom())
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        match (op, inner(x), inner(y)) {
            (_, Some(a), Some(b)) => Element::lifted(self.inner.op(op, a, b)),
            (BinOp::Mul | BinOp::Meet, _, _) => Element::bottom(),
            (BinOp::Imp, None, _) => self.one(),
            (BinOp::Imp, Some(_), None) => Element::bottom(),
            (BinOp::Join, None, _) => y.clone(),
            (BinOp::Join, Some(_), None) => x.clone(),
        }
    }

    fn elements(&self) -> Option<Vec<Element>> {
        let mut out = vec![Element::bottom()];
        out.extend(self.inner.elements()?.iter().cloned().map(Element::lifted));
        Some(out)
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        let mut out = vec![Element::bottom()];
        out.extend(self.inner.component_sample(n).into_iter().map(Element::lifted));
        out
    }

    fn render(&self, x: &Element) -> String {
        match inner(x) {
            None => "0".into(),
            Some(v) => {
                let r = self.inner.render(v);
                if r == "0" {
                    "0'".into()
                } else {
                    r
                }
            }
        }
    }

    fn certified_radical(&self) -> Option<ElementPredicate> {
        Some(Arc::new(|x| matches!(x, Element::Lifted(Some(_)))))
    }

    fn certified_skeleton(&self) -> Option<Vec<Element>> {
        Some(vec![Element::bottom(), self.one()])
    }
}

/// Adjoins a bottom `0` to a 0-free algebra: `x*0 = 0`, `x -> 0 = 0` for
/// `x` above the bottom, `0 -> x = 1`.
pub fn lift(h: &Algebra) -> Result<Algebra> {
    if h.zero().is_some() {
        return Err(Error::Invalid(format!(
            "lift needs a 0-free algebra, {} has zero",
            h.name()
        )));
    }
    let mut certs = Vec::new();
    for (needs, gives) in [
        (Label::CancellativeHoop, Label::Product),
        (Label::GeneralizedBoolean, Label::Godel),
        (Label::WajsbergHoop, Label::BL),
        (Label::Hoop, Label::BCIRL),
    ] {
        if h.is_certified(Certificate::Class(needs)) {
            certs.push(Certificate::Class(gives));
        }
    }
    Ok(Algebra::new(
        format!("lift({})", h.name()),
        LiftCarrier { inner: h.clone() },
        certs,
    ))
}
