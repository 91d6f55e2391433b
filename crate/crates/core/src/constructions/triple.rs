use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    classify, Algebra, Carrier, Certificate, CheckReport, Element, ElementPredicate, Label,
    Strategy, Witness,
};
use crate::error::{Error, Result};
use crate::structure::{maximal_filters, Filter};
use crate::term::BinOp;

pub type JoinFn = Arc<dyn Fn(&Element, &Element) -> Element + Send + Sync>;

#[derive(Clone)]
pub enum JoinKind {
    /// `b v c = 1` if `b` is in the filter, `c` otherwise.
    FromMaximalFilter(Filter),
    UserSupplied(JoinFn),
}

/// A map `B x C -> C` meant to satisfy the external join axioms.
#[derive(Clone)]
pub struct ExternalJoin {
    pub bool_alg: Algebra,
    pub canc: Algebra,
    pub kind: JoinKind,
}

impl fmt::Debug for ExternalJoin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExternalJoin({})", self.label())
    }
}

impl ExternalJoin {
    pub fn user_supplied(
        bool_alg: &Algebra,
        canc: &Algebra,
        f: impl Fn(&Element, &Element) -> Element + Send + Sync + 'static,
    ) -> Self {
        ExternalJoin {
            bool_alg: bool_alg.clone(),
            canc: canc.clone(),
            kind: JoinKind::UserSupplied(Arc::new(f)),
        }
    }

    /// `b v_e c`.
    pub fn apply(&self, b: &Element, c: &Element) -> Element {
        match &self.kind {
            JoinKind::FromMaximalFilter(m) => {
                if m.contains(b) {
                    self.canc.one()
                } else {
                    c.clone()
                }
            }
            JoinKind::UserSupplied(f) => f(b, c),
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            JoinKind::FromMaximalFilter(m) => format!("join by {}", m.label()),
            JoinKind::UserSupplied(_) => "user-supplied join".into(),
        }
    }

    fn neg(&self, b: &Element) -> Element {
        let zero = self.bool_alg.zero().expect("Boolean part has zero");
        self.bool_alg.op(BinOp::Imp, b, &zero)
    }
}

fn require_boolean(b: &Algebra) -> Result<()> {
    let boolean = Certificate::Class(Label::Boolean);
    if b.is_certified(boolean) {
        return Ok(());
    }
    if b.is_finite() && classify(b, Strategy::Exhaustive)?.has(Label::Boolean) {
        return Ok(());
    }
    b.require_certificate(boolean)
}

/// The join `v_M` of a maximal filter `m` of the Boolean algebra `b`.
pub fn external_join_from_maximal_filter(
    b: &Algebra,
    m: &Filter,
    c: &Algebra,
) -> Result<ExternalJoin> {
    require_boolean(b)?;
    c.require_certificate(Certificate::Class(Label::CancellativeHoop))?;
    if !m.algebra().same_carrier(b) {
        return Err(Error::NotAFilter(format!(
            "{} is a filter of {}, not of {}",
            m.label(),
            m.algebra().name(),
            b.name()
        )));
    }
    if !b.is_finite() {
        return Err(Error::Symbolic(format!(
            "maximality of {} in {}",
            m.label(),
            b.name()
        )));
    }
    let maximal = maximal_filters(b)?;
    let elements = b.elements().expect("finite");
    let same = |f: &Filter| elements.iter().all(|e| f.contains(e) == m.contains(e));
    if !maximal.iter().any(same) {
        return Err(Error::NotAFilter(format!(
            "{} is not a maximal filter of {}",
            m.label(),
            b.name()
        )));
    }
    Ok(ExternalJoin {
        bool_alg: b.clone(),
        canc: c.clone(),
        kind: JoinKind::FromMaximalFilter(m.clone()),
    })
}

/// Which carrier each variable ranges over.
#[derive(Clone, Copy)]
enum Side {
    B,
    C,
}

/// Checks `test` on all tuples drawn from the two domains.
fn mixed(
    ej: &ExternalJoin,
    subject: &str,
    strategy: Strategy,
    domains: (&[Element], &[Element]),
    vars: &[(&str, Side)],
    test: impl Fn(&[Element]) -> bool,
) -> CheckReport {
    let pick = |s: Side| match s {
        Side::B => domains.0,
        Side::C => domains.1,
    };
    let sizes: Vec<usize> = vars.iter().map(|(_, s)| pick(*s).len()).collect();
    if sizes.iter().any(|n| *n == 0) {
        return CheckReport::passing(subject, strategy, 0);
    }
    let mut idx = vec![0; vars.len()];
    let mut values: Vec<Element> = Vec::with_capacity(vars.len());
    let mut checked = 0u64;
    loop {
        values.clear();
        values.extend(vars.iter().zip(&idx).map(|((_, s), i)| pick(*s)[*i].clone()));
        checked += 1;
        if !test(&values) {
            let witness = vars
                .iter()
                .zip(&values)
                .map(|((label, side), e)| Witness {
                    label: label.to_string(),
                    element: e.clone(),
                    name: match side {
                        Side::B => ej.bool_alg.render(e),
                        Side::C => ej.canc.render(e),
                    },
                })
                .collect();
            return CheckReport::refuted(subject, strategy, witness, "clause fails");
        }
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return CheckReport::passing(subject, strategy, checked);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Checks the four external join axioms on the strategy's domains of `B`
/// and `C`, reporting each clause as a child.
pub fn verify_external_join(ej: &ExternalJoin, strategy: Strategy) -> Result<CheckReport> {
    let (b, c) = (&ej.bool_alg, &ej.canc);
    let db = b.domain(strategy)?;
    let dc = c.domain(strategy)?;
    let d = (db.as_slice(), dc.as_slice());
    let j = |x: &Element, y: &Element| ej.apply(x, y);
    let bz = b.zero().ok_or(Error::SymbolAbsent("zero"))?;
    let bo = b.one();
    let co = c.one();
    let mut children = Vec::new();

    for op in BinOp::ALL {
        children.push(mixed(
            ej,
            &format!("V1: h_b preserves {}", op.symbol().name()),
            strategy,
            d,
            &[("b", Side::B), ("c", Side::C), ("c'", Side::C)],
            |v| j(&v[0], &c.op(op, &v[1], &v[2])) == c.op(op, &j(&v[0], &v[1]), &j(&v[0], &v[2])),
        ));
    }
    children.push(mixed(
        ej,
        "V1: h_b preserves one",
        strategy,
        d,
        &[("b", Side::B)],
        |v| j(&v[0], &co) == co,
    ));
    for op in [BinOp::Meet, BinOp::Join] {
        children.push(mixed(
            ej,
            &format!("V1: k_c preserves {}", op.symbol().name()),
            strategy,
            d,
            &[("c", Side::C), ("b", Side::B), ("b'", Side::B)],
            |v| j(&b.op(op, &v[1], &v[2]), &v[0]) == c.op(op, &j(&v[1], &v[0]), &j(&v[2], &v[0])),
        ));
    }
    children.push(mixed(
        ej,
        "V2: h_0 is the identity",
        strategy,
        d,
        &[("c", Side::C)],
        |v| j(&bz, &v[0]) == v[0],
    ));
    children.push(mixed(
        ej,
        "V2: h_1 is constantly 1",
        strategy,
        d,
        &[("c", Side::C)],
        |v| j(&bo, &v[0]) == co,
    ));
    children.push(mixed(
        ej,
        "V3",
        strategy,
        d,
        &[("b", Side::B), ("b'", Side::B), ("c", Side::C), ("c'", Side::C)],
        |v| {
            let cc = c.op(BinOp::Join, &v[2], &v[3]);
            let left = c.op(BinOp::Join, &j(&v[0], &v[2]), &j(&v[1], &v[3]));
            let mid = j(&b.op(BinOp::Join, &v[0], &v[1]), &cc);
            let right = j(&v[0], &j(&v[1], &cc));
            left == mid && mid == right
        },
    ));
    children.push(mixed(
        ej,
        "V4",
        strategy,
        d,
        &[("b", Side::B), ("c", Side::C), ("c'", Side::C)],
        |v| {
            let left = c.op(BinOp::Mul, &j(&v[0], &v[1]), &v[2]);
            let right = c.op(
                BinOp::Meet,
                &j(&ej.neg(&v[0]), &v[2]),
                &j(&v[0], &c.op(BinOp::Mul, &v[1], &v[2])),
            );
            left == right
        },
    ));
    Ok(CheckReport::all(
        format!("{} is an external join of {} and {}", ej.label(), b.name(), c.name()),
        strategy,
        children,
    ))
}

/// `(b, ~b v_e c)`, the canonical representative of the class of `(b, c)`.
pub fn canonicalize(ej: &ExternalJoin, b: &Element, c: &Element) -> Result<Element> {
    ej.bool_alg.check_member(b)?;
    ej.canc.check_member(c)?;
    Ok(canonical(ej, b, c))
}

pub(crate) fn canonical(ej: &ExternalJoin, b: &Element, c: &Element) -> Element {
    Element::triple(b.clone(), ej.apply(&ej.neg(b), c))
}

/// `B (x) C` over canonical class representatives.
pub(crate) struct TripleCarrier {
    pub(crate) ej: ExternalJoin,
}

pub(crate) fn parts(x: &Element) -> (&Element, &Element) {
    match x {
        Element::Triple(b, c) => (b, c),
        _ => unreachable!("triple product applied to {x}"),
    }
}

impl TripleCarrier {
    fn canon(&self, b: Element, c: Element) -> Element {
        canonical(&self.ej, &b, &c)
    }

    fn bop(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        self.ej.bool_alg.op(op, x, y)
    }

    fn cop(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        self.ej.canc.op(op, x, y)
    }

    fn pairs<'a>(&self, bs: &'a [Element], cs: &'a [Element]) -> Vec<Element> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in cs {
            for b in bs {
                let t = self.canon(b.clone(), c.clone());
                if seen.insert(t.clone()) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl Carrier for TripleCarrier {
    fn has_zero(&self) -> bool {
        true
    }

    fn contains(&self, x: &Element) -> bool {
        match x {
            Element::Triple(b, c) => {
                self.ej.bool_alg.contains(b)
                    && self.ej.canc.contains(c)
                    && self.ej.apply(&self.ej.neg(b), c) == **c
            }
            _ => false,
        }
    }

    fn one(&self) -> Element {
        Element::triple(self.ej.bool_alg.one(), self.ej.canc.one())
    }

    fn zero(&self) -> Option<Element> {
        let z = self.ej.bool_alg.zero()?;
        Some(self.canon(z, self.ej.canc.one()))
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        let ((b, c), (b2, c2)) = (parts(x), parts(y));
        match op {
            BinOp::Mul => self.canon(self.bop(BinOp::Meet, b, b2), self.cop(BinOp::Mul, c, c2)),
            BinOp::Meet => self.canon(self.bop(BinOp::Meet, b, b2), self.cop(BinOp::Meet, c, c2)),
            BinOp::Join => {
                let j = |x: &Element, y: &Element| self.ej.apply(x, y);
                let (nb, nb2) = (self.ej.neg(b), self.ej.neg(b2));
                let first = j(&self.bop(BinOp::Join, &nb, &nb2), &self.cop(BinOp::Join, c, c2));
                let second = j(&self.bop(BinOp::Join, b, &nb2), c2);
                let third = j(&self.bop(BinOp::Join, &nb, b2), c);
                let cpart = self.cop(BinOp::Meet, &self.cop(BinOp::Meet, &first, &second), &third);
                self.canon(self.bop(BinOp::Join, b, b2), cpart)
            }
            BinOp::Imp => {
                let cpart = self.ej.apply(&self.ej.neg(b), &self.cop(BinOp::Imp, c, c2));
                self.canon(self.bop(BinOp::Imp, b, b2), cpart)
            }
        }
    }

    fn elements(&self) -> Option<Vec<Element>> {
        let bs = self.ej.bool_alg.elements()?;
        let cs = self.ej.canc.elements()?;
        Some(self.pairs(bs, cs))
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        let bs = self.ej.bool_alg.component_sample(n);
        let cs = self.ej.canc.component_sample(n);
        self.pairs(&bs, &cs)
    }

    fn render(&self, x: &Element) -> String {
        let (b, c) = parts(x);
        format!(
            "[{},{}]",
            self.ej.bool_alg.render(b),
            self.ej.canc.render(c)
        )
    }

    fn certified_radical(&self) -> Option<ElementPredicate> {
        let one = self.ej.bool_alg.one();
        Some(Arc::new(move |x| matches!(x, Element::Triple(b, _) if **b == one)))
    }

    fn certified_skeleton(&self) -> Option<Vec<Element>> {
        let one = self.ej.canc.one();
        let bs = self.ej.bool_alg.elements()?;
        Some(bs.iter().map(|b| self.canon(b.clone(), one.clone())).collect())
    }
}

/// The product algebra `B (x)_v C`. The join is verified first at `strategy`.
pub fn triple_product(ej: &ExternalJoin, strategy: Strategy) -> Result<Algebra> {
    let report = verify_external_join(ej, strategy)?;
    if let crate::algebra::CheckStatus::Refuted { note, .. } = &report.status {
        return Err(Error::Invalid(format!(
            "{} is not an external join: {note}",
            ej.label()
        )));
    }
    Ok(Algebra::new(
        format!(
            "triple({}, {}, {})",
            ej.bool_alg.name(),
            ej.label(),
            ej.canc.name()
        ),
        TripleCarrier { ej: ej.clone() },
        [Certificate::Class(Label::Product)],
    ))
}
