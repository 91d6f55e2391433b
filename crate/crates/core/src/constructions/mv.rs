use crate::algebra::{classify, Algebra, Carrier, Certificate, Element, Label, Strategy};
use crate::error::{Error, Result};
use crate::term::BinOp;

/// `A x {0,1}` over a Wajsberg hoop `A`; `(a,1)` is `a`, `(a,0)` is `~a`.
struct MvCarrier {
    inner: Algebra,
}

fn split(x: &Element) -> (&Element, bool) {
    match x {
        Element::Mv(a, bit) => (a, *bit),
        _ => unreachable!("MV-closure applied to {x}"),
    }
}

impl MvCarrier {
    fn h(&self, op: BinOp, a: &Element, b: &Element) -> Element {
        self.inner.op(op, a, b)
    }

    /// `a (+) b = (a -> ab) -> b`.
    fn oplus(&self, a: &Element, b: &Element) -> Element {
        let ab = self.h(BinOp::Mul, a, b);
        self.h(BinOp::Imp, &self.h(BinOp::Imp, a, &ab), b)
    }

    fn mul(&self, x: &Element, y: &Element) -> Element {
        let ((a, i), (b, j)) = (split(x), split(y));
        match (i, j) {
            (true, true) => Element::mv(self.h(BinOp::Mul, a, b), true),
            (true, false) => Element::mv(self.h(BinOp::Imp, a, b), false),
            (false, true) => Element::mv(self.h(BinOp::Imp, b, a), false),
            (false, false) => Element::mv(self.oplus(a, b), false),
        }
    }

    fn imp(&self, x: &Element, y: &Element) -> Element {
        let ((a, i), (b, j)) = (split(x), split(y));
        match (i, j) {
            // The source table prints this case as "(a ->, 1)"; `a -> b` is the
            // only reading under which (1,1) is the unit of the order.
            (true, true) => Element::mv(self.h(BinOp::Imp, a, b), true),
            (true, false) => Element::mv(self.h(BinOp::Mul, a, b), false),
            (false, true) => Element::mv(self.oplus(a, b), true),
            (false, false) => Element::mv(self.h(BinOp::Imp, b, a), true),
        }
    }

    fn meet(&self, x: &Element, y: &Element) -> Element {
        self.mul(x, &self.imp(x, y))
    }

    fn join(&self, x: &Element, y: &Element) -> Element {
        let l = self.imp(&self.imp(x, y), y);
        let r = self.imp(&self.imp(y, x), x);
        self.meet(&l, &r)
    }
}

impl Carrier for MvCarrier {
    fn has_zero(&self) -> bool {
        true
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Mv(a, _) if self.inner.contains(a))
    }

    fn one(&self) -> Element {
        Element::mv(self.inner.one(), true)
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::mv(self.inner.one(), false))
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        match op {
            BinOp::Mul => self.mul(x, y),
            BinOp::Imp => self.imp(x, y),
            BinOp::Meet => self.meet(x, y),
            BinOp::Join => self.join(x, y),
        }
    }

    fn elements(&self) -> Option<Vec<Element>> {
        Some(interleave(self.inner.elements()?.to_vec()))
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        interleave(self.inner.component_sample(n))
    }

    fn render(&self, x: &Element) -> String {
        let (a, bit) = split(x);
        let r = self.inner.render(a);
        if bit {
            r
        } else {
            format!("¬{r}")
        }
    }
}

fn interleave(v: Vec<Element>) -> Vec<Element> {
    v.into_iter()
        .flat_map(|a| [Element::mv(a.clone(), true), Element::mv(a, false)])
        .collect()
}

/// The MV-closure of a Wajsberg hoop. Finite inputs without a certificate
/// are classified exhaustively first.
pub fn mv_closure(a: &Algebra) -> Result<Algebra> {
    if a.zero().is_some() {
        return Err(Error::Invalid(format!(
            "mv_closure needs a 0-free algebra, {} has zero",
            a.name()
        )));
    }
    let wajsberg = Certificate::Class(Label::WajsbergHoop);
    let generalized = Certificate::Class(Label::GeneralizedBoolean);
    let (is_wajsberg, is_generalized) = if a.is_certified(wajsberg) {
        (true, a.is_certified(generalized))
    } else if a.is_finite() {
        let c = classify(a, Strategy::Exhaustive)?;
        (c.has(Label::WajsbergHoop), c.has(Label::GeneralizedBoolean))
    } else {
        (false, false)
    };
    if !is_wajsberg {
        a.require_certificate(wajsberg)?;
    }
    let cert = if is_generalized {
        Label::Boolean
    } else {
        Label::MV
    };
    Ok(Algebra::new(
        format!("mv_closure({})", a.name()),
        MvCarrier { inner: a.clone() },
        [Certificate::Class(cert)],
    ))
}

/// `(a, i) |-> (a, 1 - i)`.
pub fn mv_negation(x: &Element) -> Element {
    let (a, bit) = split(x);
    Element::mv(a.clone(), !bit)
}

/// Whether `x` lies in the `{(a,1)}` slice.
pub fn in_slice(x: &Element) -> bool {
    matches!(x, Element::Mv(_, true))
}
