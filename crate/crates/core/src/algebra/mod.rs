//! Carriers, algebras and the checking machinery that runs against them.
//!
//! An [`Algebra`] wraps a [`Carrier`] (operation implementations plus a way
//! to list or sample elements) together with construction certificates.
//! Finite carriers are materialised once into a [`FiniteView`] with
//! index-based tables; symbolic carriers are only ever sampled.

pub(crate) mod check;
mod classify;
mod derived;
mod element;
mod finite;
mod iso;
mod symbolic;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::term::{BinOp, Signature};

pub use check::{
    check_equation, eval, for_each_tuple, leq, CheckReport, CheckStatus, Strategy, Witness,
    DEFAULT_BOUND,
};
pub use classify::{classify, Classification, Label};
pub use derived::{
    direct_product, subalgebra_from_members, subalgebra_generated, subalgebra_by_predicate,
    zero_free_reduct,
};
pub use element::Element;
pub use finite::{AlgebraJson, FiniteView, TableAlgebra};
pub use iso::{bounded_iso_check, find_isomorphism};
pub use symbolic::{nat_vectors, pos_rationals, NatVecHoop, PosRatHoop};

/// Shared membership test, used for predicate-defined subsets.
pub type ElementPredicate = Arc<dyn Fn(&Element) -> bool + Send + Sync>;

/// Operation implementations and element enumeration for one carrier.
///
/// Operations may assume their arguments satisfy [`Carrier::contains`];
/// [`Algebra`] checks membership before delegating.
pub trait Carrier: Send + Sync {
    fn has_zero(&self) -> bool;
    fn contains(&self, x: &Element) -> bool;
    fn one(&self) -> Element;
    /// The bottom element, when the signature has `zero`.
    fn zero(&self) -> Option<Element>;
    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element;
    /// Every element in canonical order, or `None` for a symbolic carrier.
    fn elements(&self) -> Option<Vec<Element>>;
    /// Deterministic finite sample. Atomic symbolic carriers return exactly
    /// `n` elements; composite ones draw `n` from each symbolic component.
    fn sample(&self, n: usize) -> Vec<Element> {
        self.elements()
            .map(|v| v.into_iter().take(n).collect())
            .unwrap_or_default()
    }
    fn render(&self, x: &Element) -> String;
    /// The radical, when it is known from how the carrier was built.
    fn certified_radical(&self) -> Option<ElementPredicate> {
        None
    }
    /// The Boolean skeleton, when it is known from how the carrier was built.
    fn certified_skeleton(&self) -> Option<Vec<Element>> {
        None
    }
}

/// Facts an algebra is known to satisfy because of how it was constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Class(Label),
    /// 0-free subreduct of a product algebra. No equational test exists for
    /// this class, so it is only ever granted by construction.
    ProductHoop,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Class(l) => write!(f, "{l}"),
            Certificate::ProductHoop => f.write_str("product-hoop"),
        }
    }
}

/// Adds every certificate implied by the ones present.
pub fn close_certificates(certs: impl IntoIterator<Item = Certificate>) -> BTreeSet<Certificate> {
    let mut out = BTreeSet::new();
    for c in certs {
        out.insert(c);
        if let Certificate::Class(l) = c {
            out.extend(l.implied().iter().map(|l| Certificate::Class(*l)));
        }
    }
    let product_hoop = [Label::CancellativeHoop, Label::GeneralizedBoolean]
        .iter()
        .any(|l| out.contains(&Certificate::Class(*l)));
    if product_hoop {
        out.insert(Certificate::ProductHoop);
    }
    out
}

/// Certificates that survive dropping `zero` from the signature.
pub(crate) fn reduct_certificates(certs: &BTreeSet<Certificate>) -> BTreeSet<Certificate> {
    let mut out = Vec::new();
    for c in certs {
        match c {
            Certificate::Class(Label::Boolean) => {
                out.push(Certificate::Class(Label::GeneralizedBoolean))
            }
            Certificate::Class(Label::MV) => out.push(Certificate::Class(Label::WajsbergHoop)),
            Certificate::Class(Label::Product) => {
                out.push(Certificate::ProductHoop);
                out.push(Certificate::Class(Label::Hoop));
            }
            Certificate::Class(Label::BL | Label::Godel) => {
                out.push(Certificate::Class(Label::Hoop))
            }
            Certificate::Class(Label::BCIRL) => {}
            other => out.push(*other),
        }
    }
    close_certificates(out)
}

struct Inner {
    name: String,
    carrier: Arc<dyn Carrier>,
    certs: BTreeSet<Certificate>,
    view: OnceLock<Option<Arc<FiniteView>>>,
}

/// An algebra in the signature `(*, ->, /\, \/, [0,] 1)`. Cheap to clone.
#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.0.name)
            .field("signature", &self.signature().to_string())
            .field("certificates", &self.0.certs)
            .finish()
    }
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        carrier: impl Carrier + 'static,
        certs: impl IntoIterator<Item = Certificate>,
    ) -> Self {
        Self::from_arc(name.into(), Arc::new(carrier), close_certificates(certs))
    }

    fn from_arc(name: String, carrier: Arc<dyn Carrier>, certs: BTreeSet<Certificate>) -> Self {
        Algebra(Arc::new(Inner {
            name,
            carrier,
            certs,
            view: OnceLock::new(),
        }))
    }

    /// Same carrier under a different name and extra certificates.
    pub fn renamed(&self, name: impl Into<String>, extra: &[Certificate]) -> Self {
        let certs = close_certificates(self.0.certs.iter().chain(extra).copied());
        Self::from_arc(name.into(), self.0.carrier.clone(), certs)
    }

    /// Whether both share one carrier (renaming keeps the carrier).
    pub fn same_carrier(&self, other: &Algebra) -> bool {
        std::ptr::eq(
            Arc::as_ptr(&self.0.carrier) as *const (),
            Arc::as_ptr(&other.0.carrier) as *const (),
        )
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn carrier(&self) -> &dyn Carrier {
        self.0.carrier.as_ref()
    }

    pub fn signature(&self) -> Signature {
        if self.0.carrier.has_zero() {
            Signature::FULL
        } else {
            Signature::ZERO_FREE
        }
    }

    pub fn certificates(&self) -> &BTreeSet<Certificate> {
        &self.0.certs
    }

    pub fn is_certified(&self, c: Certificate) -> bool {
        self.0.certs.contains(&c)
    }

    pub fn require_certificate(&self, c: Certificate) -> Result<()> {
        if self.is_certified(c) {
            Ok(())
        } else {
            Err(Error::NotCertified {
                algebra: self.name().to_string(),
                required: c.to_string(),
            })
        }
    }

    /// The materialised tables, for finite carriers.
    pub fn finite(&self) -> Option<&FiniteView> {
        self.0
            .view
            .get_or_init(|| {
                self.0
                    .carrier
                    .elements()
                    .map(|els| Arc::new(FiniteView::build(self.0.carrier.as_ref(), els)))
            })
            .as_deref()
    }

    pub fn require_finite(&self) -> Result<&FiniteView> {
        self.finite()
            .ok_or_else(|| Error::Symbolic(self.name().to_string()))
    }

    pub fn is_finite(&self) -> bool {
        self.finite().is_some()
    }

    pub fn elements(&self) -> Option<&[Element]> {
        self.finite().map(|v| v.elements())
    }

    /// First `n` elements of a finite carrier, or the symbolic sampler's output.
    pub fn sample(&self, n: usize) -> Vec<Element> {
        match self.finite() {
            Some(v) => v.elements().iter().take(n).cloned().collect(),
            None => self.0.carrier.sample(n),
        }
    }

    /// What a composite carrier draws from this component: every element
    /// when finite, the first `n` sampled otherwise.
    pub fn component_sample(&self, n: usize) -> Vec<Element> {
        match self.finite() {
            Some(v) => v.elements().to_vec(),
            None => self.0.carrier.sample(n),
        }
    }

    /// Whole carrier under `Exhaustive`, sample under `Bounded`.
    pub fn domain(&self, strategy: Strategy) -> Result<Vec<Element>> {
        match strategy {
            Strategy::Exhaustive => Ok(self
                .elements()
                .ok_or_else(|| {
                    Error::StrategyMismatch(format!(
                        "exhaustive strategy needs a finite carrier, {} is symbolic",
                        self.name()
                    ))
                })?
                .to_vec()),
            Strategy::Bounded(n) => Ok(self.sample(n)),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        match self.finite() {
            Some(v) => v.index_of(x).is_some(),
            None => self.0.carrier.contains(x),
        }
    }

    pub fn check_member(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ForeignElement {
                element: x.to_string(),
                algebra: self.name().to_string(),
            })
        }
    }

    pub fn one(&self) -> Element {
        self.0.carrier.one()
    }

    pub fn zero(&self) -> Option<Element> {
        if self.0.carrier.has_zero() {
            self.0.carrier.zero()
        } else {
            None
        }
    }

    pub fn require_zero(&self) -> Result<Element> {
        self.zero().ok_or(Error::SymbolAbsent("zero"))
    }

    /// Operation without membership checks; callers guarantee membership.
    pub(crate) fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        self.0.carrier.op(op, x, y)
    }

    pub fn apply(&self, op: BinOp, x: &Element, y: &Element) -> Result<Element> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(self.op(op, x, y))
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.apply(BinOp::Mul, x, y)
    }

    pub fn imp(&self, x: &Element, y: &Element) -> Result<Element> {
        self.apply(BinOp::Imp, x, y)
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Result<Element> {
        self.apply(BinOp::Meet, x, y)
    }

    pub fn join(&self, x: &Element, y: &Element) -> Result<Element> {
        self.apply(BinOp::Join, x, y)
    }

    /// `x -> 0`.
    pub fn neg(&self, x: &Element) -> Result<Element> {
        let zero = self.require_zero()?;
        self.imp(x, &zero)
    }

    pub(crate) fn leq_unchecked(&self, x: &Element, y: &Element) -> bool {
        self.op(BinOp::Imp, x, y) == self.one()
    }

    pub fn render(&self, x: &Element) -> String {
        self.0.carrier.render(x)
    }

    /// Finds an element by its rendered name. Symbolic carriers are searched
    /// through their first `search` sampled elements.
    pub fn element_by_name(&self, name: &str, search: usize) -> Option<Element> {
        match self.finite() {
            Some(v) => v.index_by_name(name).map(|i| v.element(i).clone()),
            None => self
                .sample(search)
                .into_iter()
                .find(|e| self.render(e) == name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_closure() {
        let c = close_certificates([Certificate::Class(Label::Boolean)]);
        for l in [Label::MV, Label::Godel, Label::Product, Label::BL, Label::BCIRL] {
            assert!(c.contains(&Certificate::Class(l)), "{l}");
        }
        let c = close_certificates([Certificate::Class(Label::CancellativeHoop)]);
        assert!(c.contains(&Certificate::ProductHoop));
        assert!(c.contains(&Certificate::Class(Label::WajsbergHoop)));
        assert!(c.contains(&Certificate::Class(Label::Hoop)));
    }

    #[test]
    fn reducts_keep_the_hoop_side() {
        let boolean = close_certificates([Certificate::Class(Label::Boolean)]);
        let r = reduct_certificates(&boolean);
        assert!(r.contains(&Certificate::Class(Label::GeneralizedBoolean)));
        assert!(r.contains(&Certificate::ProductHoop));
        assert!(!r.contains(&Certificate::Class(Label::Boolean)));
        assert!(!r.contains(&Certificate::Class(Label::BCIRL)));
    }
}
