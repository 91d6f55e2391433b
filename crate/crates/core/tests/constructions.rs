mod common;

use common::*;
use proptest::prelude::*;
use reslat::algebra::{
    classify, find_isomorphism, zero_free_reduct, Algebra, CheckStatus, Element, Label, Strategy,
};
use reslat::catalog::{bool_algebra, build_str, godel_chain, maximal_join, mv_chain, nk, two0};
use reslat::constructions::{
    b_of, c_of, canonicalize, cs, gs, lift, mv_closure, mv_negation, product_closure,
    remark_filter_of_double, triple_product, verify_decomposition, verify_external_join,
    verify_main_theorem, ExternalJoin,
};
use reslat::Error;

fn iso(a: &Algebra, b: &Algebra) -> bool {
    find_isomorphism(a, b).unwrap().is_some()
}

fn size(a: &Algebra) -> usize {
    a.elements().unwrap().len()
}

fn c1(k: u64) -> Element {
    Element::nat(&[k])
}

#[test]
fn lifting() {
    assert!(iso(&lift(&two0()).unwrap(), &godel_chain(3).unwrap()));
    assert!(iso(
        &lift(&zero_free_reduct(&bool_algebra(0).unwrap())).unwrap(),
        &bool_algebra(1).unwrap()
    ));
    let p = lift(&nk(1)).unwrap();
    assert!(!p.is_finite());
    let c = classify(&p, Strategy::Bounded(6)).unwrap();
    assert!(c.has(Label::Product) && !c.has(Label::MV) && !c.has(Label::Godel));
    assert_eq!(p.render(&Element::bottom()), "0");
    assert!(matches!(lift(&godel_chain(3).unwrap()), Err(Error::Invalid(_))));
}

#[test]
fn b_and_c_by_hand() {
    // In a cancellative hoop b is constantly 1 and c is the identity.
    let n = nk(1);
    for x in n.sample(6) {
        assert_eq!(b_of(&n, &x).unwrap(), n.one());
        assert_eq!(c_of(&n, &x).unwrap(), x);
    }
    // 2 + N: the bottom splits as b = 0, c = 1.
    let p = lift(&nk(1)).unwrap();
    assert_eq!(b_of(&p, &Element::bottom()).unwrap(), Element::bottom());
    assert_eq!(c_of(&p, &Element::bottom()).unwrap(), p.one());
    // Idempotent elements are all b, no c.
    let g = godel_chain(3).unwrap();
    let a = element(&g, "a");
    assert_eq!(b_of(&g, &a).unwrap(), a);
    assert_eq!(c_of(&g, &a).unwrap(), g.one());
    assert!(b_of(&g, &c1(1)).is_err());
}

#[test]
fn mv_closures() {
    let trivial = zero_free_reduct(&bool_algebra(0).unwrap());
    let m = mv_closure(&trivial).unwrap();
    assert!(iso(&m, &bool_algebra(1).unwrap()));

    let m = mv_closure(&two0()).unwrap();
    assert_eq!(size(&m), 4);
    assert!(classify(&m, Strategy::Exhaustive).unwrap().has(Label::Boolean));
    assert!(iso(&m, &bool_algebra(2).unwrap()));

    // A bounded Wajsberg hoop closes to itself times 2.
    let m = mv_closure(&zero_free_reduct(&mv_chain(2).unwrap())).unwrap();
    assert_eq!(size(&m), 6);
    let c = classify(&m, Strategy::Exhaustive).unwrap();
    assert!(c.has(Label::MV) && !c.has(Label::Boolean));
    let double = build_str("direct_product(mv_chain(2), bool(1))").unwrap();
    assert!(iso(&m, &double));

    for x in m.elements().unwrap() {
        assert_eq!(mv_negation(&mv_negation(x)), *x);
        assert_eq!(m.imp(x, &m.zero().unwrap()).unwrap(), mv_negation(x));
    }
    assert!(mv_closure(&godel_chain(3).unwrap()).is_err());
    // The 0-free reduct of G3 is not Wajsberg.
    assert!(mv_closure(&zero_free_reduct(&godel_chain(3).unwrap())).is_err());
}

#[test]
fn joins_from_maximal_filters() {
    let b = bool_algebra(2).unwrap();
    let ej = maximal_join(&b, 0, &nk(1)).unwrap();
    let (a, bb, zero) = (element(&b, "a"), element(&b, "b"), b.zero().unwrap());
    for k in 0..5 {
        assert_eq!(ej.apply(&a, &c1(k)), c1(0));
        assert_eq!(ej.apply(&b.one(), &c1(k)), c1(0));
        assert_eq!(ej.apply(&bb, &c1(k)), c1(k));
        assert_eq!(ej.apply(&zero, &c1(k)), c1(k));
    }
    let r = verify_external_join(&ej, Strategy::Bounded(5)).unwrap();
    assert!(matches!(r.status, CheckStatus::BoundedValid { .. }), "{r:?}");
    assert!(maximal_join(&b, 2, &nk(1)).is_err());
}

#[test]
fn user_joins_are_checked() {
    let b = bool_algebra(1).unwrap();
    let one = nk(1).one();
    let bad = ExternalJoin::user_supplied(&b, &nk(1), move |_, _| one.clone());
    let r = verify_external_join(&bad, Strategy::Bounded(4)).unwrap();
    assert!(r.is_refuted());
    assert!(r.find("V2: h_0 is the identity").unwrap().is_refuted());
    assert!(r.find("V2: h_1 is constantly 1").unwrap().passed());

    let top = b.one();
    let canc_one = nk(1).one();
    let good = ExternalJoin::user_supplied(&b, &nk(1), move |x, c| {
        if *x == top { canc_one.clone() } else { c.clone() }
    });
    assert!(verify_external_join(&good, Strategy::Bounded(4)).unwrap().passed());
}

#[test]
fn canonical_representatives() {
    let b = bool_algebra(2).unwrap();
    let ej = maximal_join(&b, 0, &nk(1)).unwrap();
    let (a, bb) = (element(&b, "a"), element(&b, "b"));
    // ~a = b lies outside {a, 1}, so c survives; ~b = a absorbs it.
    assert_eq!(canonicalize(&ej, &a, &c1(3)).unwrap(), Element::triple(a.clone(), c1(3)));
    assert_eq!(canonicalize(&ej, &bb, &c1(3)).unwrap(), Element::triple(bb, c1(0)));
    assert!(canonicalize(&ej, &c1(1), &c1(1)).is_err());

    let t = triple_product(&ej, Strategy::Bounded(5)).unwrap();
    assert_eq!(t.render(&Element::triple(a, c1(2))), "[a,c^2]");
}

#[test]
fn g_and_c_parts() {
    let s = nk(1);
    assert_eq!(size(&gs(&s).unwrap()), 1);
    assert!(!cs(&s).unwrap().is_finite());

    let s = two0();
    assert_eq!(size(&gs(&s).unwrap()), 2);
    assert_eq!(size(&cs(&s).unwrap()), 1);

    let s = zero_free_reduct(&lift(&nk(1)).unwrap());
    let g = gs(&s).unwrap();
    let mut names: Vec<String> = g.elements().unwrap().iter().map(|e| g.render(e)).collect();
    names.sort();
    assert_eq!(names, ["0", "1"]);
    let c = cs(&s).unwrap();
    assert!(c.sample(6).iter().all(|x| *x != Element::bottom()));

    // Product hoops only.
    assert!(gs(&godel_chain(3).unwrap()).is_err());
}

#[test]
fn product_closures() {
    let pc = product_closure(&two0()).unwrap();
    assert!(iso(&pc.algebra, &bool_algebra(2).unwrap()));

    let pc = product_closure(&nk(1)).unwrap();
    assert_eq!(size(&pc.bs), 2);
    let e = pc.embed(&c1(2)).unwrap();
    assert_eq!(pc.algebra.render(&e), "[1,c^2]");
    assert!(pc.image_filter().contains(&e));
    let r = verify_external_join(&pc.join, Strategy::Bounded(5)).unwrap();
    assert!(matches!(r.status, CheckStatus::BoundedValid { .. }));
}

#[test]
fn main_theorem_checks() {
    let r = verify_main_theorem(&nk(1), Strategy::Bounded(10)).unwrap();
    assert!(matches!(r.status, CheckStatus::BoundedValid { bound: 10, .. }), "{r:?}");
    let r = verify_main_theorem(&two0(), Strategy::Exhaustive).unwrap();
    assert_eq!(r.status, CheckStatus::Valid);
    assert!(verify_main_theorem(&nk(2), Strategy::Bounded(5)).unwrap().passed());
}

#[test]
fn decomposition() {
    let r = verify_decomposition(&lift(&nk(1)).unwrap(), Strategy::Bounded(8)).unwrap();
    assert!(r.passed());
    let r = verify_decomposition(&godel_chain(3).unwrap(), Strategy::Exhaustive).unwrap();
    assert!(r.is_refuted());
    assert!(verify_decomposition(&nk(1), Strategy::Bounded(4)).is_err());
}

#[test]
fn filter_of_double() {
    for src in ["godel_chain(4)", "mv_chain(3)", "bool(2)", "lift(two0())"] {
        let a = build_str(src).unwrap();
        let r = remark_filter_of_double(&a, Strategy::Exhaustive).unwrap();
        assert_eq!(r.status, CheckStatus::Valid, "{src}");
    }
    let r = remark_filter_of_double(&lift(&nk(1)).unwrap(), Strategy::Bounded(6)).unwrap();
    assert!(r.passed());
}

proptest! {
    #[test]
    fn embedding_is_arithmetic(u in 0u64..40, v in 0u64..40) {
        let pc = product_closure(&nk(1)).unwrap();
        let p = &pc.algebra;
        let f = |k: u64| pc.embed(&c1(k)).unwrap();
        prop_assert_eq!(p.mul(&f(u), &f(v)).unwrap(), f(u + v));
        prop_assert_eq!(p.imp(&f(u), &f(v)).unwrap(), f(v.saturating_sub(u)));
        prop_assert_eq!(p.meet(&f(u), &f(v)).unwrap(), f(u.max(v)));
        prop_assert_eq!(p.join(&f(u), &f(v)).unwrap(), f(u.min(v)));
    }

    #[test]
    fn decomposition_in_lifted_powers(u in 0u64..20, v in 0u64..20, bottom in any::<bool>()) {
        let p = lift(&nk(2)).unwrap();
        let x = if bottom { Element::bottom() } else { Element::lifted(Element::nat(&[u, v])) };
        let (b, c) = (b_of(&p, &x).unwrap(), c_of(&p, &x).unwrap());
        prop_assert_eq!(p.mul(&b, &c).unwrap(), x.clone());
        prop_assert_eq!(p.meet(&b, &c).unwrap(), x);
    }

    #[test]
    fn boolean_joins_are_external_joins(k in 1usize..4, pick in 0usize..3) {
        let b = bool_algebra(k).unwrap();
        let ej = maximal_join(&b, pick % k, &nk(1)).unwrap();
        prop_assert!(verify_external_join(&ej, Strategy::Bounded(4)).unwrap().passed());
    }
}
