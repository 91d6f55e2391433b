//! Direct products, 0-free reducts and subalgebras.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::{reduct_certificates, Algebra, Carrier, Certificate, Element, ElementPredicate};
use crate::error::{Error, Result};
use crate::term::BinOp;

struct ProductCarrier {
    left: Algebra,
    right: Algebra,
}

fn split(x: &Element) -> (&Element, &Element) {
    match x {
        Element::Pair(a, b) => (a, b),
        _ => unreachable!("direct product applied to {x}"),
    }
}

impl Carrier for ProductCarrier {
    fn has_zero(&self) -> bool {
        self.left.zero().is_some()
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Pair(a, b) if self.left.contains(a) && self.right.contains(b))
    }

    fn one(&self) -> Element {
        Element::pair(self.left.one(), self.right.one())
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::pair(self.left.zero()?, self.right.zero()?))
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        let (a, b) = split(x);
        let (c, d) = split(y);
        Element::pair(self.left.op(op, a, c), self.right.op(op, b, d))
    }

    fn elements(&self) -> Option<Vec<Element>> {
        let l = self.left.elements()?;
        let r = self.right.elements()?;
        Some(
            l.iter()
                .flat_map(|a| r.iter().map(move |b| Element::pair(a.clone(), b.clone())))
                .collect(),
        )
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        let l = self.left.component_sample(n);
        let r = self.right.component_sample(n);
        let mut out = Vec::with_capacity(l.len() * r.len());
        // Diagonals i + j = d, left index ascending.
        for d in 0..(l.len() + r.len()).saturating_sub(1) {
            for (i, a) in l.iter().enumerate() {
                if d >= i && d - i < r.len() {
                    out.push(Element::pair(a.clone(), r[d - i].clone()));
                }
            }
        }
        out
    }

    fn render(&self, x: &Element) -> String {
        let (a, b) = split(x);
        format!("({},{})", self.left.render(a), self.right.render(b))
    }
}

/// `a x b` with componentwise operations.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch(
            a.name().to_string(),
            b.name().to_string(),
        ));
    }
    let shared: Vec<Certificate> = a
        .certificates()
        .intersection(b.certificates())
        .copied()
        .collect();
    Ok(Algebra::new(
        format!("direct_product({}, {})", a.name(), b.name()),
        ProductCarrier {
            left: a.clone(),
            right: b.clone(),
        },
        shared,
    ))
}

struct ReductCarrier {
    inner: Algebra,
}

impl Carrier for ReductCarrier {
    fn has_zero(&self) -> bool {
        false
    }

    fn contains(&self, x: &Element) -> bool {
        self.inner.contains(x)
    }

    fn one(&self) -> Element {
        self.inner.one()
    }

    fn zero(&self) -> Option<Element> {
        None
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        self.inner.op(op, x, y)
    }

    fn elements(&self) -> Option<Vec<Element>> {
        self.inner.elements().map(<[Element]>::to_vec)
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        self.inner.sample(n)
    }

    fn render(&self, x: &Element) -> String {
        self.inner.render(x)
    }
}

/// Same carrier and operations with `zero` dropped from the signature.
/// Already 0-free algebras are returned unchanged.
pub fn zero_free_reduct(alg: &Algebra) -> Algebra {
    if alg.zero().is_none() {
        return alg.clone();
    }
    Algebra::new(
        format!("reduct0({})", alg.name()),
        ReductCarrier { inner: alg.clone() },
        reduct_certificates(alg.certificates()),
    )
}

type Sampler = Arc<dyn Fn(usize) -> Vec<Element> + Send + Sync>;

enum Members {
    Finite(Vec<Element>, HashSet<Element>),
    Predicate {
        test: ElementPredicate,
        sampler: Sampler,
    },
}

struct SubCarrier {
    parent: Algebra,
    members: Members,
    keep_zero: bool,
}

impl Carrier for SubCarrier {
    fn has_zero(&self) -> bool {
        self.keep_zero
    }

    fn contains(&self, x: &Element) -> bool {
        match &self.members {
            Members::Finite(_, set) => set.contains(x),
            Members::Predicate { test, .. } => self.parent.contains(x) && test(x),
        }
    }

    fn one(&self) -> Element {
        self.parent.one()
    }

    fn zero(&self) -> Option<Element> {
        if self.keep_zero {
            self.parent.zero()
        } else {
            None
        }
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        self.parent.op(op, x, y)
    }

    fn elements(&self) -> Option<Vec<Element>> {
        match &self.members {
            Members::Finite(v, _) => Some(v.clone()),
            Members::Predicate { .. } => None,
        }
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        match &self.members {
            Members::Finite(v, _) => v.iter().take(n).cloned().collect(),
            Members::Predicate { sampler, .. } => sampler(n),
        }
    }

    fn render(&self, x: &Element) -> String {
        self.parent.render(x)
    }
}

fn inherited(parent: &Algebra, zero_free: bool) -> BTreeSet<Certificate> {
    if zero_free && parent.zero().is_some() {
        reduct_certificates(parent.certificates())
    } else {
        parent.certificates().clone()
    }
}

/// The subalgebra of `parent` on exactly `members` (plus nothing else).
/// Fails if the set misses a constant or is not closed under the operations.
/// With `zero_free` the result drops `zero` from its signature.
pub fn subalgebra_from_members(
    parent: &Algebra,
    name: impl Into<String>,
    members: Vec<Element>,
    zero_free: bool,
    extra: &[Certificate],
) -> Result<Algebra> {
    let name = name.into();
    for m in &members {
        parent.check_member(m)?;
    }
    let set: HashSet<Element> = members.iter().cloned().collect();
    let mut ordered: Vec<Element> = match parent.elements() {
        Some(all) => all.iter().filter(|e| set.contains(*e)).cloned().collect(),
        None => members.clone(),
    };
    ordered.dedup();
    let mut constants = vec![parent.one()];
    if !zero_free {
        constants.extend(parent.zero());
    }
    for c in &constants {
        if !set.contains(c) {
            return Err(Error::ClosureViolation(format!(
                "{name} misses the constant {}",
                parent.render(c)
            )));
        }
    }
    for x in &ordered {
        for y in &ordered {
            for op in BinOp::ALL {
                let z = parent.op(op, x, y);
                if !set.contains(&z) {
                    return Err(Error::ClosureViolation(format!(
                        "{name} is not closed: {} {} {} = {}",
                        parent.render(x),
                        op.symbol().name(),
                        parent.render(y),
                        parent.render(&z)
                    )));
                }
            }
        }
    }
    let mut certs = inherited(parent, zero_free);
    certs.extend(extra.iter().copied());
    Ok(Algebra::new(
        name,
        SubCarrier {
            parent: parent.clone(),
            members: Members::Finite(ordered, set),
            keep_zero: !zero_free && parent.zero().is_some(),
        },
        certs,
    ))
}

/// A symbolic subalgebra given by a membership test and a sampler. Closure is
/// checked on all pairs from the first `check` sampled elements.
pub fn subalgebra_by_predicate(
    parent: &Algebra,
    name: impl Into<String>,
    test: ElementPredicate,
    sampler: impl Fn(usize) -> Vec<Element> + Send + Sync + 'static,
    zero_free: bool,
    extra: &[Certificate],
    check: usize,
) -> Result<Algebra> {
    let name = name.into();
    let sampler: Sampler = Arc::new(sampler);
    let sample = sampler(check);
    let member = |x: &Element| parent.contains(x) && test(x);
    if !member(&parent.one()) {
        return Err(Error::ClosureViolation(format!("{name} misses one")));
    }
    for x in &sample {
        if !member(x) {
            return Err(Error::ClosureViolation(format!(
                "{name} sampler produced non-member {}",
                parent.render(x)
            )));
        }
        for y in &sample {
            for op in BinOp::ALL {
                let z = parent.op(op, x, y);
                if !member(&z) {
                    return Err(Error::ClosureViolation(format!(
                        "{name} is not closed: {} {} {} = {}",
                        parent.render(x),
                        op.symbol().name(),
                        parent.render(y),
                        parent.render(&z)
                    )));
                }
            }
        }
    }
    let mut certs = inherited(parent, zero_free);
    certs.extend(extra.iter().copied());
    Ok(Algebra::new(
        name,
        SubCarrier {
            parent: parent.clone(),
            members: Members::Predicate { test, sampler },
            keep_zero: !zero_free && parent.zero().is_some(),
        },
        certs,
    ))
}

/// Least subset containing `gens` and the constants, closed under every
/// operation of the signature.
pub fn subalgebra_generated(alg: &Algebra, gens: &[Element]) -> Result<Algebra> {
    let view = alg.require_finite()?;
    for g in gens {
        alg.check_member(g)?;
    }
    let mut inside = vec![false; view.len()];
    let mut frontier: Vec<usize> = gens
        .iter()
        .filter_map(|g| view.index_of(g))
        .chain(std::iter::once(view.one()))
        .chain(view.zero())
        .collect();
    let mut members: Vec<usize> = Vec::new();
    while let Some(i) = frontier.pop() {
        if inside[i] {
            continue;
        }
        inside[i] = true;
        members.push(i);
        for &j in &members {
            for op in BinOp::ALL {
                for k in [view.op(op, i, j), view.op(op, j, i)] {
                    if !inside[k] {
                        frontier.push(k);
                    }
                }
            }
        }
    }
    let names: Vec<String> = (0..view.len())
        .filter(|i| gens.iter().any(|g| view.index_of(g) == Some(*i)))
        .map(|i| view.name(i).to_string())
        .collect();
    let elems = (0..view.len())
        .filter(|i| inside[*i])
        .map(|i| view.element(i).clone())
        .collect();
    subalgebra_from_members(
        alg,
        format!("sub({}; {})", alg.name(), names.join(",")),
        elems,
        alg.zero().is_none(),
        &[],
    )
}
