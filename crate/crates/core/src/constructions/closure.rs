use std::collections::HashSet;
use std::sync::Arc;

use super::mv::{in_slice, mv_closure, mv_negation};
use super::triple::{
    canonical, external_join_from_maximal_filter, parts, triple_product, ExternalJoin,
};
use crate::algebra::check::{check_property, check_property_on};
use crate::algebra::{
    check_equation, direct_product, subalgebra_by_predicate, subalgebra_from_members,
    zero_free_reduct, Algebra, Certificate, CheckReport, Element, Label, Strategy, DEFAULT_BOUND,
};
use crate::catalog;
use crate::error::{Error, Result};
use crate::structure::{is_maximal_filter_witnessed, Filter};
use crate::term::{parse_equation, BinOp, Signature};

/// Cap on the number of elements discovered for `G(S)` of a symbolic `S`.
pub const GS_CAP: usize = 1 << 12;
/// Elements of a symbolic `S` whose images seed `G(S)`.
const GS_SEED: usize = 64;

pub(crate) fn b_unchecked(alg: &Algebra, x: &Element) -> Element {
    let sq = alg.op(BinOp::Mul, x, x);
    alg.op(BinOp::Imp, &alg.op(BinOp::Imp, x, &sq), x)
}

pub(crate) fn c_unchecked(alg: &Algebra, x: &Element) -> Element {
    alg.op(BinOp::Imp, x, &alg.op(BinOp::Mul, x, x))
}

/// `b(x) = (x -> x^2) -> x`.
pub fn b_of(alg: &Algebra, x: &Element) -> Result<Element> {
    alg.check_member(x)?;
    Ok(b_unchecked(alg, x))
}

/// `c(x) = x -> x^2`.
pub fn c_of(alg: &Algebra, x: &Element) -> Result<Element> {
    alg.check_member(x)?;
    Ok(c_unchecked(alg, x))
}

fn require_product_hoop(s: &Algebra) -> Result<()> {
    s.require_certificate(Certificate::ProductHoop)?;
    if s.zero().is_some() {
        return Err(Error::Invalid(format!(
            "{} has zero; product hoops are 0-free",
            s.name()
        )));
    }
    Ok(())
}

/// `G(S) = {b(x)}`, a generalized Boolean subalgebra of a product hoop.
/// For symbolic `S` it is closed from the images of a sample and must stay
/// below [`GS_CAP`] elements.
pub fn gs(s: &Algebra) -> Result<Algebra> {
    require_product_hoop(s)?;
    let name = format!("G({})", s.name());
    let extra = [Certificate::Class(Label::GeneralizedBoolean)];
    let members: Vec<Element> = match s.elements() {
        Some(els) => {
            let mut seen = HashSet::new();
            els.iter()
                .map(|x| b_unchecked(s, x))
                .filter(|g| seen.insert(g.clone()))
                .collect()
        }
        None => {
            let mut seen: HashSet<Element> = HashSet::new();
            let mut members = Vec::new();
            let mut frontier: Vec<Element> = std::iter::once(s.one())
                .chain(s.sample(GS_SEED).iter().map(|x| b_unchecked(s, x)))
                .collect();
            while let Some(g) = frontier.pop() {
                if !seen.insert(g.clone()) {
                    continue;
                }
                if b_unchecked(s, &g) != g {
                    return Err(Error::ClosureViolation(format!(
                        "{} is generated in {name} but b({0}) != {0}",
                        s.render(&g)
                    )));
                }
                members.push(g.clone());
                if members.len() > GS_CAP {
                    return Err(Error::Invalid(format!(
                        "{name} exceeds {GS_CAP} elements"
                    )));
                }
                for h in &members {
                    for op in BinOp::ALL {
                        for z in [s.op(op, &g, h), s.op(op, h, &g)] {
                            if !seen.contains(&z) {
                                frontier.push(z);
                            }
                        }
                    }
                }
            }
            // Deterministic order: by position among the seeds' images.
            let order: Vec<Element> = std::iter::once(s.one())
                .chain(s.sample(GS_SEED).iter().map(|x| b_unchecked(s, x)))
                .collect();
            members.sort_by_key(|m| order.iter().position(|o| o == m).unwrap_or(usize::MAX));
            members
        }
    };
    subalgebra_from_members(s, name, members, true, &extra)
}

/// `C(S) = {c(x)}`, a cancellative subalgebra of a product hoop. Symbolic
/// `S` gives a predicate subalgebra (`c(x) = x`) sampled through the images
/// of `S`'s sample.
pub fn cs(s: &Algebra) -> Result<Algebra> {
    require_product_hoop(s)?;
    let name = format!("C({})", s.name());
    let extra = [Certificate::Class(Label::CancellativeHoop)];
    match s.elements() {
        Some(els) => {
            let mut seen = HashSet::new();
            let members: Vec<Element> = els
                .iter()
                .map(|x| c_unchecked(s, x))
                .filter(|c| seen.insert(c.clone()))
                .collect();
            subalgebra_from_members(s, name, members, true, &extra)
        }
        None => {
            let test_alg = s.clone();
            let test = Arc::new(move |x: &Element| c_unchecked(&test_alg, x) == *x);
            let sample_alg = s.clone();
            let sampler = move |n: usize| {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                let mut k = n;
                for _ in 0..4 {
                    for x in sample_alg.sample(k) {
                        let c = c_unchecked(&sample_alg, &x);
                        if seen.insert(c.clone()) {
                            out.push(c);
                        }
                    }
                    if out.len() >= n {
                        break;
                    }
                    k *= 2;
                }
                out.truncate(n);
                out
            };
            subalgebra_by_predicate(s, name, test, sampler, true, &extra, DEFAULT_BOUND)
        }
    }
}

/// `P(S) = MV(G(S)) (x)_{v_S} C(S)` with the embedding `f(x) = [b(x), c(x)]`.
#[derive(Clone, Debug)]
pub struct ProductClosure {
    pub source: Algebra,
    pub gs: Algebra,
    pub cs: Algebra,
    /// `B(S)`, the MV-closure of `G(S)`.
    pub bs: Algebra,
    pub join: ExternalJoin,
    pub algebra: Algebra,
}

impl ProductClosure {
    /// `f(x)`, as a canonical representative.
    pub fn embed(&self, x: &Element) -> Result<Element> {
        self.source.check_member(x)?;
        Ok(self.embed_unchecked(x))
    }

    fn embed_unchecked(&self, x: &Element) -> Element {
        let b = Element::mv(b_unchecked(&self.source, x), true);
        canonical(&self.join, &b, &c_unchecked(&self.source, x))
    }

    /// `S(S) = {[b, c] : b in the G(S) slice}`, the intended image of `f`.
    pub fn image_filter(&self) -> Filter {
        Filter::from_predicate(
            &self.algebra,
            "S(S)",
            Arc::new(|x: &Element| matches!(x, Element::Triple(b, _) if in_slice(b))),
        )
    }
}

/// Builds `P(S)` for a product hoop `S`.
pub fn product_closure(s: &Algebra) -> Result<ProductClosure> {
    let g = gs(s)?;
    let c = cs(s)?;
    let b = mv_closure(&g)?;
    let slice: Vec<Element> = b
        .elements()
        .expect("G(S) is finite")
        .iter()
        .filter(|x| in_slice(x))
        .cloned()
        .collect();
    let m = Filter::from_elements(&b, &slice)?;
    let join = external_join_from_maximal_filter(&b, &m, &c)?;
    let strategy = Strategy::for_algebra(&c, DEFAULT_BOUND);
    let algebra = triple_product(&join, strategy)?;
    let algebra = algebra.renamed(format!("product_closure({})", s.name()), &[]);
    Ok(ProductClosure {
        source: s.clone(),
        gs: g,
        cs: c,
        bs: b,
        join,
        algebra,
    })
}

/// Checks that `f : S -> P(S)` is an injective homomorphism onto `S(S)`,
/// that `S(S)` is a filter, and that it is maximal, with witnesses
/// `[~b, c]` for every outsider `[b, c]`.
pub fn verify_main_theorem(s: &Algebra, strategy: Strategy) -> Result<CheckReport> {
    let pc = product_closure(s)?;
    let p = &pc.algebra;
    let f = |x: &Element| pc.embed_unchecked(x);
    let mut children = Vec::new();

    let one = p.one();
    children.push(if f(&s.one()) == one {
        CheckReport::passing("f(1) = 1", strategy, 1)
    } else {
        CheckReport::refuted(
            "f(1) = 1",
            strategy,
            vec![],
            format!("f(1) = {}", p.render(&f(&s.one()))),
        )
    });
    for op in BinOp::ALL {
        children.push(check_property(
            s,
            &format!("f preserves {}", op.symbol().name()),
            strategy,
            &["x", "y"],
            |v| {
                let l = f(&s.op(op, &v[0], &v[1]));
                let r = p.op(op, &f(&v[0]), &f(&v[1]));
                (l != r).then(|| {
                    format!("f(x op y) = {}, f(x) op f(y) = {}", p.render(&l), p.render(&r))
                })
            },
        )?);
    }
    children.push(check_property(s, "f injective", strategy, &["x", "y"], |v| {
        (v[0] != v[1] && f(&v[0]) == f(&v[1]))
            .then(|| format!("both map to {}", p.render(&f(&v[0]))))
    })?);

    let image = pc.image_filter();
    let pdomain = p.domain(strategy)?;
    children.push(check_property_on(
        p,
        "image is S(S)",
        strategy,
        &pdomain,
        &["t"],
        |v| {
            if !image.contains(&v[0]) {
                return None;
            }
            // Preimage g * c of [(g,1), c].
            let (b, c) = parts(&v[0]);
            let Element::Mv(g, _) = b else { unreachable!() };
            let x = s.op(BinOp::Mul, g, c);
            (f(&x) != v[0]).then(|| format!("f(g*c) = {}", p.render(&f(&x))))
        },
    )?);
    children.push(image.validate(strategy)?);
    let join = pc.join.clone();
    let hint = move |e: &Element| {
        let (b, c) = parts(e);
        Some(canonical(&join, &mv_negation(b), c))
    };
    children.push(is_maximal_filter_witnessed(p, &image, strategy, Some(&hint))?);

    Ok(CheckReport::all(
        format!("{} is a maximal filter of {}", s.name(), p.name()),
        strategy,
        children,
    ))
}

/// The four decomposition identities of product algebras.
pub fn verify_decomposition(alg: &Algebra, strategy: Strategy) -> Result<CheckReport> {
    alg.require_zero()?;
    let mut children = Vec::new();
    for (subject, src) in [
        ("x = b(x) * c(x)", "x1 = ((x1 -> x1^2) -> x1) * (x1 -> x1^2)"),
        ("x = b(x) /\\ c(x)", "x1 = ((x1 -> x1^2) -> x1) /\\ (x1 -> x1^2)"),
        ("~~x = b(x)", "~~x1 = (x1 -> x1^2) -> x1"),
        ("x \\/ ~x = c(x)", "x1 \\/ ~x1 = x1 -> x1^2"),
    ] {
        let eq = parse_equation(src, Signature::FULL)?;
        let mut r = check_equation(alg, &eq, strategy)?;
        r.subject = subject.to_string();
        children.push(r);
    }
    Ok(CheckReport::all(
        format!("decomposition in {}", alg.name()),
        strategy,
        children,
    ))
}

/// Checks that `{(1, x)}` is a maximal filter of `2 x A` isomorphic to the
/// 0-free reduct of `A` through `x |-> (1, x)`.
pub fn remark_filter_of_double(a: &Algebra, strategy: Strategy) -> Result<CheckReport> {
    a.require_zero()?;
    let two = catalog::bool_algebra(1)?;
    let p = direct_product(&two, a)?;
    let top = two.one();
    let embed = |x: &Element| Element::pair(top.clone(), x.clone());
    let filter = match a.elements() {
        Some(els) => {
            let members: Vec<Element> = els.iter().map(embed).collect();
            Filter::from_elements(&p, &members)?
        }
        None => {
            let top = top.clone();
            Filter::from_predicate(
                &p,
                "{(1,x)}",
                Arc::new(move |x: &Element| matches!(x, Element::Pair(b, _) if **b == top)),
            )
        }
    };
    let reduct = zero_free_reduct(a);
    let mut children = vec![filter.validate(strategy)?];
    children.push(check_property(&reduct, "x |-> (1,x) lands in the filter", strategy, &["x"], |v| {
        (!filter.contains(&embed(&v[0]))).then(|| "image outside the filter".to_string())
    })?);
    let pdomain = p.domain(strategy)?;
    children.push(check_property_on(&p, "x |-> (1,x) is onto the filter", strategy, &pdomain, &["t"], |v| {
        match &v[0] {
            Element::Pair(_, x) if filter.contains(&v[0]) => {
                (embed(x) != v[0]).then(|| "not of the form (1,x)".to_string())
            }
            _ => None,
        }
    })?);
    children.push(check_property(&reduct, "x |-> (1,x) is injective", strategy, &["x", "y"], |v| {
        (v[0] != v[1] && embed(&v[0]) == embed(&v[1])).then(|| "collision".to_string())
    })?);
    children.push(if embed(&a.one()) == p.one() {
        CheckReport::passing("x |-> (1,x) preserves one", strategy, 1)
    } else {
        CheckReport::refuted("x |-> (1,x) preserves one", strategy, vec![], "one moves")
    });
    for op in BinOp::ALL {
        children.push(check_property(
            &reduct,
            &format!("x |-> (1,x) preserves {}", op.symbol().name()),
            strategy,
            &["x", "y"],
            |v| {
                (embed(&a.op(op, &v[0], &v[1])) != p.op(op, &embed(&v[0]), &embed(&v[1])))
                    .then(|| "operation not preserved".to_string())
            },
        )?);
    }
    children.push(is_maximal_filter_witnessed(&p, &filter, strategy, None)?);
    Ok(CheckReport::all(
        format!("{{(1,x)}} is a maximal filter of 2 x {}", a.name()),
        strategy,
        children,
    ))
}
