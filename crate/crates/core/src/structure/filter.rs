use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{
    subalgebra_from_members, Algebra, CheckReport, Element, ElementPredicate, Strategy,
};
use crate::error::{Error, Result};
use crate::term::BinOp;

#[derive(Clone)]
enum Members {
    /// Members in carrier order.
    Finite(Vec<Element>, HashSet<Element>),
    Predicate(ElementPredicate),
}

/// A subset of an algebra's carrier closed under product and upwards.
#[derive(Clone)]
pub struct Filter {
    algebra: Algebra,
    members: Members,
    label: String,
}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.names() {
            Some(names) => write!(f, "Filter{{{}}}", names.join(",")),
            None => write!(f, "Filter({})", self.label),
        }
    }
}

impl PartialEq for Filter {
    fn eq(&self, other: &Self) -> bool {
        match (&self.members, &other.members) {
            (Members::Finite(a, _), Members::Finite(b, _)) => a == b,
            _ => false,
        }
    }
}

/// Index-level filter test for finite carriers.
pub(crate) fn is_filter_mask(alg: &Algebra, inside: &[bool]) -> std::result::Result<(), String> {
    let v = alg.finite().expect("finite");
    if !inside[v.one()] {
        return Err("does not contain one".into());
    }
    for x in 0..v.len() {
        if !inside[x] {
            continue;
        }
        for y in 0..v.len() {
            if inside[y] && !inside[v.op(BinOp::Mul, x, y)] {
                return Err(format!("{} * {} falls outside", v.name(x), v.name(y)));
            }
            if !inside[y] && v.leq(x, y) {
                return Err(format!("{} <= {} but {} is missing", v.name(x), v.name(y), v.name(y)));
            }
        }
    }
    Ok(())
}

impl Filter {
    /// Validates `members` exhaustively; the algebra must be finite.
    pub fn from_elements(alg: &Algebra, members: &[Element]) -> Result<Filter> {
        let v = alg.require_finite()?;
        let mut inside = vec![false; v.len()];
        for m in members {
            alg.check_member(m)?;
            inside[v.index_of(m).expect("member")] = true;
        }
        is_filter_mask(alg, &inside).map_err(Error::NotAFilter)?;
        Ok(Self::from_mask(alg, &inside))
    }

    /// Builds from a membership mask that is already known to be a filter.
    pub(crate) fn from_mask(alg: &Algebra, inside: &[bool]) -> Filter {
        let v = alg.finite().expect("finite");
        let list: Vec<Element> = (0..v.len())
            .filter(|i| inside[*i])
            .map(|i| v.element(i).clone())
            .collect();
        let set = list.iter().cloned().collect();
        let label = format!(
            "{{{}}}",
            (0..v.len())
                .filter(|i| inside[*i])
                .map(|i| v.name(i))
                .collect::<Vec<_>>()
                .join(",")
        );
        Filter {
            algebra: alg.clone(),
            members: Members::Finite(list, set),
            label,
        }
    }

    /// A filter given by a membership test. Nothing is checked here; use
    /// [`Filter::validate`] at a strategy.
    pub fn from_predicate(alg: &Algebra, label: impl Into<String>, test: ElementPredicate) -> Filter {
        Filter {
            algebra: alg.clone(),
            members: Members::Predicate(test),
            label: label.into(),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, x: &Element) -> bool {
        match &self.members {
            Members::Finite(_, set) => set.contains(x),
            Members::Predicate(test) => self.algebra.contains(x) && test(x),
        }
    }

    /// Members in carrier order, when listed.
    pub fn elements(&self) -> Option<&[Element]> {
        match &self.members {
            Members::Finite(v, _) => Some(v),
            Members::Predicate(_) => None,
        }
    }

    pub fn len(&self) -> Option<usize> {
        self.elements().map(<[Element]>::len)
    }

    pub fn names(&self) -> Option<Vec<String>> {
        self.elements()
            .map(|v| v.iter().map(|e| self.algebra.render(e)).collect())
    }

    /// Membership mask over the finite carrier.
    pub(crate) fn mask(&self) -> Vec<bool> {
        let v = self.algebra.finite().expect("finite");
        v.elements().iter().map(|e| self.contains(e)).collect()
    }

    /// Proper means `0` is excluded, or for 0-free algebras that the filter
    /// is not the whole carrier.
    pub fn is_proper(&self) -> Result<bool> {
        if let Some(z) = self.algebra.zero() {
            return Ok(!self.contains(&z));
        }
        match (self.len(), self.algebra.finite()) {
            (Some(k), Some(v)) => Ok(k < v.len()),
            _ => Err(Error::Symbolic(format!(
                "properness of {} in {}",
                self.label,
                self.algebra.name()
            ))),
        }
    }

    /// Checks the filter axioms on the strategy's domain.
    pub fn validate(&self, strategy: Strategy) -> Result<CheckReport> {
        let alg = &self.algebra;
        let domain = alg.domain(strategy)?;
        let mut children = Vec::new();
        let one = alg.one();
        children.push(if self.contains(&one) {
            CheckReport::passing("contains one", strategy, 1)
        } else {
            CheckReport::refuted("contains one", strategy, vec![], "one is missing")
        });
        let inside: Vec<Element> = domain.iter().filter(|e| self.contains(e)).cloned().collect();
        children.push(crate::algebra::check::check_property_on(
            alg,
            "closed under product",
            strategy,
            &inside,
            &["x", "y"],
            |v| {
                let p = alg.op(BinOp::Mul, &v[0], &v[1]);
                (!self.contains(&p)).then(|| format!("x * y = {} is missing", alg.render(&p)))
            },
        )?);
        children.push(crate::algebra::check::check_property_on(
            alg,
            "upward closed",
            strategy,
            &domain,
            &["x", "y"],
            |v| {
                (self.contains(&v[0]) && !self.contains(&v[1]) && alg.leq_unchecked(&v[0], &v[1]))
                    .then(|| "x <= y, x in the filter, y missing".to_string())
            },
        )?);
        Ok(CheckReport::all(
            format!("{} is a filter", self.label),
            strategy,
            children,
        ))
    }

    /// The filter with the inherited operations, as a 0-free algebra.
    pub fn as_algebra(&self) -> Result<Algebra> {
        let members = self
            .elements()
            .ok_or_else(|| Error::Symbolic(self.label.clone()))?
            .to_vec();
        subalgebra_from_members(
            &self.algebra,
            format!("{} in {}", self.label, self.algebra.name()),
            members,
            true,
            &[],
        )
    }

    pub fn to_json(&self) -> FilterJson {
        FilterJson {
            algebra: self.algebra.name().to_string(),
            members: self.names().unwrap_or_else(|| vec![self.label.clone()]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterJson {
    pub algebra: String,
    pub members: Vec<String>,
}

fn members_mask(alg: &Algebra, xs: &[Element]) -> Result<Vec<bool>> {
    let v = alg.require_finite()?;
    for x in xs {
        alg.check_member(x)?;
    }
    // Products of generators, then everything above one of them.
    let mut products = vec![false; v.len()];
    products[v.one()] = true;
    let gens: Vec<usize> = xs.iter().map(|x| v.index_of(x).expect("member")).collect();
    let mut stack = vec![v.one()];
    while let Some(p) = stack.pop() {
        for &g in &gens {
            let q = v.op(BinOp::Mul, p, g);
            if !products[q] {
                products[q] = true;
                stack.push(q);
            }
        }
    }
    Ok((0..v.len())
        .map(|y| (0..v.len()).any(|p| products[p] && v.leq(p, y)))
        .collect())
}

/// Least filter containing `xs`: everything above a finite product of them.
pub fn filter_generate(alg: &Algebra, xs: &[Element]) -> Result<Filter> {
    let mask = members_mask(alg, xs)?;
    Ok(Filter::from_mask(alg, &mask))
}

fn sort_filters(alg: &Algebra, mut fs: Vec<Filter>) -> Vec<Filter> {
    let v = alg.finite().expect("finite");
    let key = |f: &Filter| -> (usize, Vec<usize>) {
        let idx: Vec<usize> = f
            .elements()
            .expect("finite")
            .iter()
            .map(|e| v.index_of(e).expect("member"))
            .collect();
        (idx.len(), idx)
    };
    fs.sort_by_cached_key(key);
    fs
}

/// Every filter, generated as the filter of each single element. In a
/// finite integral commutative residuated lattice every filter is generated
/// by the product of its members, so this route is complete.
pub fn all_filters_by_generation(alg: &Algebra) -> Result<Vec<Filter>> {
    let v = alg.require_finite()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in v.elements() {
        let mask = members_mask(alg, std::slice::from_ref(e))?;
        if seen.insert(mask.clone()) {
            out.push(Filter::from_mask(alg, &mask));
        }
    }
    Ok(sort_filters(alg, out))
}

/// Every filter by testing each subset of the carrier.
pub fn all_filters_by_subsets(alg: &Algebra) -> Result<Vec<Filter>> {
    let v = alg.require_finite()?;
    let n = v.len();
    if n > 20 {
        return Err(Error::Invalid(format!(
            "subset enumeration over {n} elements is too large"
        )));
    }
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << n) {
        let mask: Vec<bool> = (0..n).map(|i| bits & (1 << i) != 0).collect();
        if is_filter_mask(alg, &mask).is_ok() {
            out.push(Filter::from_mask(alg, &mask));
        }
    }
    Ok(sort_filters(alg, out))
}

/// Every filter of a finite algebra, smallest first (ties broken by the
/// members' carrier positions).
pub fn all_filters(alg: &Algebra) -> Result<Vec<Filter>> {
    if alg.require_finite()?.len() <= 12 {
        all_filters_by_subsets(alg)
    } else {
        all_filters_by_generation(alg)
    }
}

/// Maximal elements among the proper filters.
pub fn maximal_filters(alg: &Algebra) -> Result<Vec<Filter>> {
    let mut proper = Vec::new();
    for f in all_filters(alg)? {
        if f.is_proper()? {
            proper.push(f);
        }
    }
    let masks: Vec<Vec<bool>> = proper.iter().map(Filter::mask).collect();
    let below = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(x, y)| !*x || *y);
    Ok(proper
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !masks
                .iter()
                .enumerate()
                .any(|(j, m)| j != *i && m != &masks[*i] && below(&masks[*i], m))
        })
        .map(|(_, f)| f.clone())
        .collect())
}

/// Intersection of the maximal filters (the whole carrier if there are none).
/// Symbolic algebras need a construction certificate.
pub fn radical(alg: &Algebra) -> Result<Filter> {
    if let Some(v) = alg.finite() {
        let mut mask = vec![true; v.len()];
        for m in maximal_filters(alg)? {
            for (slot, inside) in mask.iter_mut().zip(m.mask()) {
                *slot &= inside;
            }
        }
        return Ok(Filter::from_mask(alg, &mask));
    }
    let test = alg
        .carrier()
        .certified_radical()
        .ok_or_else(|| Error::Symbolic(format!("no certified radical for {}", alg.name())))?;
    Ok(Filter::from_predicate(
        alg,
        format!("rad({})", alg.name()),
        test,
    ))
}

/// The complemented elements, `x /\ ~x = 0` and `x \/ ~x = 1`, as a
/// subalgebra. Symbolic algebras need a construction certificate.
pub fn boolean_skeleton(alg: &Algebra) -> Result<Algebra> {
    let zero = alg.require_zero()?;
    let name = format!("skeleton({})", alg.name());
    let members: Vec<Element> = match alg.elements() {
        Some(els) => els
            .iter()
            .filter(|x| {
                let n = alg.op(BinOp::Imp, x, &zero);
                alg.op(BinOp::Meet, x, &n) == zero && alg.op(BinOp::Join, x, &n) == alg.one()
            })
            .cloned()
            .collect(),
        None => alg.carrier().certified_skeleton().ok_or_else(|| {
            Error::Symbolic(format!("no certified Boolean skeleton for {}", alg.name()))
        })?,
    };
    subalgebra_from_members(alg, name, members, false, &[])
}

/// Checks that `f` is maximal by exhibiting, for every outsider `e` in the
/// strategy's domain, some `g` in `f` and `n >= 1` with `e^n * g = 0`; any
/// filter containing `f` and `e` then contains `0`. `hint` proposes a `g`
/// for a given outsider before the domain is searched.
pub fn is_maximal_filter_witnessed(
    alg: &Algebra,
    f: &Filter,
    strategy: Strategy,
    hint: Option<&dyn Fn(&Element) -> Option<Element>>,
) -> Result<CheckReport> {
    let zero = alg.require_zero()?;
    if f.contains(&zero) {
        return Err(Error::NotProper);
    }
    let domain = alg.domain(strategy)?;
    let max_power = match alg.finite() {
        Some(v) => v.len().max(1),
        None => 64,
    };
    let inside: Vec<Element> = domain.iter().filter(|e| f.contains(e)).cloned().collect();
    let kills = |e: &Element, g: &Element| -> Option<usize> {
        let mut p = e.clone();
        for n in 1..=max_power {
            if alg.op(BinOp::Mul, &p, g) == zero {
                return Some(n);
            }
            let next = alg.op(BinOp::Mul, &p, e);
            if next == p {
                break;
            }
            p = next;
        }
        None
    };

    let mut children = vec![f.validate(strategy)?];
    for e in domain.iter().filter(|e| !f.contains(e)) {
        let hinted = hint.and_then(|h| h(e)).filter(|g| f.contains(g));
        let found = hinted
            .iter()
            .chain(inside.iter())
            .find_map(|g| kills(e, g).map(|n| (g.clone(), n)));
        let subject = format!("outsider {}", alg.render(e));
        children.push(match found {
            Some((g, n)) => {
                let power = if n == 1 { String::new() } else { format!("^{n}") };
                CheckReport::passing(
                    format!("{subject}: e{power} * {} = 0", alg.render(&g)),
                    strategy,
                    1,
                )
            }
            None => CheckReport::refuted(
                subject,
                strategy,
                crate::algebra::check::witness(alg, &["e"], &[e.clone()]),
                "no member of the filter sends a power of e to 0",
            ),
        });
    }
    Ok(CheckReport::all(
        format!("{} is maximal (witnessed)", f.label()),
        strategy,
        children,
    ))
}
