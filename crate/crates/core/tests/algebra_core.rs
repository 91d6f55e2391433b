mod common;

use common::*;
use proptest::prelude::*;
use proptest::strategy::Strategy as _;
use reslat::algebra::{
    bounded_iso_check, check_equation, classify, direct_product, eval, find_isomorphism, leq,
    subalgebra_generated, zero_free_reduct, Algebra, CheckStatus, Element, Label, Strategy,
};
use reslat::catalog::{bool_algebra, build_str, godel_chain, mv_chain, nk, rat01, two0};
use reslat::constructions::{lift, mv_closure};
use reslat::term::{laws, parse_equation, parse_term, BinOp, Signature, Term};
use reslat::Error;

fn g3() -> Algebra {
    godel_chain(3).unwrap()
}

fn t(src: &str, alg: &Algebra) -> Term {
    parse_term(src, alg.signature()).unwrap()
}

#[test]
fn eval_examples() {
    let g = g3();
    let a = element(&g, "a");
    assert_eq!(eval(&g, &t("x1 -> x1", &g), &[a]).unwrap(), g.one());

    let l2 = mv_chain(2).unwrap();
    let half = element(&l2, "1/2");
    assert_eq!(eval(&l2, &t("~x1", &l2), &[half.clone()]).unwrap(), half);

    let p = lift(&nk(1)).unwrap();
    for c in p.sample(6) {
        let v = eval(&p, &t("x1 -> x2", &p), &[Element::bottom(), c]).unwrap();
        assert_eq!(v, p.one());
    }
}

#[test]
fn eval_errors() {
    let g = g3();
    let a = element(&g, "a");
    assert!(matches!(
        eval(&g, &t("x1 * x2", &g), &[a.clone()]),
        Err(Error::ShortEnvironment { .. })
    ));
    let l2 = mv_chain(2).unwrap();
    assert!(matches!(
        eval(&l2, &t("x1", &l2), &[a]),
        Err(Error::ForeignElement { .. })
    ));
    let r = zero_free_reduct(&g);
    let neg = parse_term("~x1", Signature::FULL).unwrap();
    assert!(matches!(
        eval(&r, &neg, &[g.one()]),
        Err(Error::SymbolAbsent(_))
    ));
}

#[test]
fn order_examples() {
    let g = g3();
    for x in g.elements().unwrap() {
        assert!(leq(&g, x, x).unwrap());
    }
    assert!(leq(&g, &element(&g, "0"), &element(&g, "a")).unwrap());
    let n2 = nk(2);
    assert!(leq(&n2, &Element::nat(&[1, 3]), &Element::nat(&[0, 2])).unwrap());
    assert!(!leq(&n2, &Element::nat(&[0, 2]), &Element::nat(&[1, 3])).unwrap());
}

#[test]
fn equation_checks() {
    let g = g3();
    assert_eq!(
        check_equation(&g, &laws::idempotency(), Strategy::Exhaustive).unwrap().status,
        CheckStatus::Valid
    );
    let r = check_equation(&g, &laws::product_identity(), Strategy::Exhaustive).unwrap();
    assert!(r.is_refuted());
    assert_eq!(
        r.witness_names(),
        vec![("x1".into(), "a".into()), ("x2".into(), "a".into())]
    );
    let b1 = bool_algebra(1).unwrap();
    assert_eq!(
        check_equation(&b1, &laws::involutivity(), Strategy::Exhaustive).unwrap().status,
        CheckStatus::Valid
    );
    // Exhaustive needs a finite carrier.
    assert!(matches!(
        check_equation(&nk(1), &laws::divisibility(), Strategy::Exhaustive),
        Err(Error::StrategyMismatch(_))
    ));
    let r = check_equation(&nk(1), &laws::divisibility(), Strategy::Bounded(5)).unwrap();
    assert_eq!(r.status, CheckStatus::BoundedValid { bound: 5, checked: 25 });
}

#[test]
fn classification_examples() {
    let c = classify(&lift(&two0()).unwrap(), Strategy::Exhaustive).unwrap();
    assert!(c.has(Label::Godel) && !c.has(Label::Product) && !c.has(Label::MV));
    for n in 1..=5 {
        assert!(classify(&mv_chain(n).unwrap(), Strategy::Exhaustive).unwrap().has(Label::MV));
    }
    for k in 1..=2 {
        let c = classify(&nk(k), Strategy::Bounded(5)).unwrap();
        assert!(c.has(Label::CancellativeHoop));
        assert!(c.labels.iter().all(|l| !l.bounded()), "{:?}", c.labels);
    }
    let c = classify(&two0(), Strategy::Exhaustive).unwrap();
    assert!(c.has(Label::GeneralizedBoolean) && !c.has(Label::CancellativeHoop));
}

#[test]
fn bl_algebras_define_their_lattice() {
    for src in ["godel_chain(4)", "mv_chain(3)", "bool(2)", "lift(two0())", "lift(nk(1))"] {
        let a = build_str(src).unwrap();
        let s = Strategy::for_algebra(&a, 6);
        for eq in [laws::join_definable(), laws::divisibility()] {
            assert!(check_equation(&a, &eq, s).unwrap().passed(), "{src}: {eq}");
        }
    }
}

#[test]
fn products_and_reducts() {
    let b1 = bool_algebra(1).unwrap();
    let p = direct_product(&b1, &b1).unwrap();
    assert_eq!(p.elements().unwrap().len(), 4);
    assert!(find_isomorphism(&p, &bool_algebra(2).unwrap()).unwrap().is_some());
    assert!(classify(&p, Strategy::Exhaustive).unwrap().has(Label::Boolean));

    let r = zero_free_reduct(&b1);
    assert!(r.zero().is_none());
    assert!(find_isomorphism(&r, &two0()).unwrap().is_some());

    let example2 = direct_product(&b1, &lift(&nk(1)).unwrap()).unwrap();
    assert!(classify(&example2, Strategy::Bounded(5)).unwrap().has(Label::Product));
    assert!(direct_product(&b1, &nk(1)).is_err());
}

#[test]
fn direct_product_keeps_shared_labels() {
    let family = [
        bool_algebra(1).unwrap(),
        godel_chain(3).unwrap(),
        mv_chain(2).unwrap(),
        godel_chain(4).unwrap(),
    ];
    for a in &family {
        for b in &family {
            let la = classify(a, Strategy::Exhaustive).unwrap().labels;
            let lb = classify(b, Strategy::Exhaustive).unwrap().labels;
            let p = direct_product(a, b).unwrap();
            let lp = classify(&p, Strategy::Exhaustive).unwrap().labels;
            for shared in la.intersection(&lb) {
                assert!(lp.contains(shared), "{} lost {shared}", p.name());
            }
        }
    }
}

#[test]
fn generated_subalgebras() {
    let g = g3();
    assert_eq!(subalgebra_generated(&g, &[g.one()]).unwrap().elements().unwrap().len(), 2);
    let r = zero_free_reduct(&g);
    assert_eq!(subalgebra_generated(&r, &[r.one()]).unwrap().elements().unwrap().len(), 1);
    let l2 = mv_chain(2).unwrap();
    let s = subalgebra_generated(&l2, &[element(&l2, "1/2")]).unwrap();
    assert_eq!(s.elements().unwrap().len(), 3);
    let b2 = bool_algebra(2).unwrap();
    let s = subalgebra_generated(&b2, &[element(&b2, "a")]).unwrap();
    let mut names: Vec<String> = s.elements().unwrap().iter().map(|e| s.render(e)).collect();
    names.sort();
    assert_eq!(names, ["0", "1", "a", "b"]);
}

#[test]
fn isomorphism_search() {
    let m = mv_closure(&two0()).unwrap();
    let b1 = bool_algebra(1).unwrap();
    assert!(find_isomorphism(&m, &direct_product(&b1, &b1).unwrap()).unwrap().is_some());
    assert!(find_isomorphism(&g3(), &mv_chain(2).unwrap()).unwrap().is_none());
    let g = g3();
    let id = find_isomorphism(&g, &g).unwrap().unwrap();
    assert!(id.iter().all(|(x, y)| x == y));
}

#[test]
fn bounded_isomorphism_checks() {
    let n = nk(1);
    let r = bounded_iso_check(&n, &n, &|x: &Element| x.clone(), 7).unwrap();
    assert!(matches!(r.status, CheckStatus::BoundedValid { bound: 7, .. }));
    // Shifting exponents is injective but moves the unit.
    let shift = |x: &Element| match x {
        Element::Nat(v) => Element::nat(&[v[0] + 1]),
        _ => unreachable!(),
    };
    let r = bounded_iso_check(&n, &n, &shift, 7).unwrap();
    assert!(r.is_refuted());
    assert!(r.find("constants").unwrap().is_refuted());
}

#[test]
fn json_round_trip_and_table_validation() {
    use reslat::algebra::AlgebraJson;
    let g = g3();
    let j = AlgebraJson::from_algebra(&g).unwrap();
    let back = j.to_table().unwrap().into_algebra("copy", []);
    assert!(find_isomorphism(&g, &back).unwrap().is_some());
    let text = serde_json::to_string(&j).unwrap();
    let parsed: AlgebraJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, j);

    // a*a = 0 in a Godel-ordered chain breaks residuation only.
    let mut bad = j.clone();
    bad.mul[1][1] = "0".into();
    let err = bad.to_table().unwrap_err().to_string();
    assert!(err.contains("residuation"), "{err}");
}

fn lukasiewicz_eval(t: &Term, n: usize, env: &[usize]) -> usize {
    match t {
        Term::Var(i) => env[*i],
        Term::One => n,
        Term::Zero => 0,
        Term::Bin(op, l, r) => {
            let (x, y) = (lukasiewicz_eval(l, n, env), lukasiewicz_eval(r, n, env));
            match op {
                BinOp::Mul => (x + y).saturating_sub(n),
                BinOp::Imp => n.min(n + y - x),
                BinOp::Meet => x.min(y),
                BinOp::Join => x.max(y),
            }
        }
    }
}

fn arb_term(vars: usize) -> impl proptest::strategy::Strategy<Value = Term> {
    let leaf = prop_oneof![(0..vars).prop_map(Term::Var), Just(Term::One), Just(Term::Zero)];
    leaf.prop_recursive(5, 32, 2, |inner| {
        (0..4usize, inner.clone(), inner).prop_map(|(k, l, r)| Term::bin(BinOp::ALL[k], l, r))
    })
}

proptest! {
    #[test]
    fn eval_matches_lukasiewicz_arithmetic(
        n in 1usize..7,
        t in arb_term(3),
        env in proptest::collection::vec(0usize..100, 3),
    ) {
        let alg = mv_chain(n).unwrap();
        let els = alg.elements().unwrap();
        let env: Vec<usize> = env.iter().map(|x| x % (n + 1)).collect();
        let elems: Vec<Element> = env.iter().map(|i| els[*i].clone()).collect();
        let got = reslat::algebra::eval(&alg, &t, &elems).unwrap();
        prop_assert_eq!(got, els[lukasiewicz_eval(&t, n, &env)].clone());
    }

    #[test]
    fn residuation_on_chains(n in 2usize..9, x in 0usize..9, y in 0usize..9, z in 0usize..9) {
        for (alg, model) in [(mv_chain(n - 1).unwrap(), lukasiewicz(n - 1)), (godel_chain(n).unwrap(), goedel(n))] {
            let (x, y, z) = (x % model.n, y % model.n, z % model.n);
            let els = alg.elements().unwrap();
            let lhs = leq(&alg, &alg.mul(&els[x], &els[y]).unwrap(), &els[z]).unwrap();
            let rhs = leq(&alg, &els[y], &alg.imp(&els[x], &els[z]).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(lhs, model.leq((model.mul)(x, y), z));
        }
    }

    #[test]
    fn nat_vectors_follow_truncated_arithmetic(
        a in proptest::collection::vec(0u64..50, 2),
        b in proptest::collection::vec(0u64..50, 2),
    ) {
        let h = nk(2);
        let (x, y) = (Element::nat(&a), Element::nat(&b));
        let zip = |f: fn(u64, u64) -> u64| -> Element {
            Element::nat(&[f(a[0], b[0]), f(a[1], b[1])])
        };
        prop_assert_eq!(h.mul(&x, &y).unwrap(), zip(|p, q| p + q));
        prop_assert_eq!(h.imp(&x, &y).unwrap(), zip(|p, q| q.saturating_sub(p)));
        prop_assert_eq!(h.meet(&x, &y).unwrap(), zip(u64::max));
        prop_assert_eq!(h.join(&x, &y).unwrap(), zip(u64::min));
    }

    #[test]
    fn rationals_follow_field_arithmetic(p in 1i64..40, q in 1i64..40, r in 1i64..40, s in 1i64..40) {
        let (a, b) = ((p.min(q), p.max(q)), (r.min(s), r.max(s)));
        let h = rat01();
        let (x, y) = (Element::rat(a.0, a.1), Element::rat(b.0, b.1));
        prop_assert_eq!(h.mul(&x, &y).unwrap(), Element::rat(a.0 * b.0, a.1 * b.1));
        // y / x capped at 1.
        let (num, den) = (b.0 * a.1, b.1 * a.0);
        let want = if num >= den { Element::rat(1, 1) } else { Element::rat(num, den) };
        prop_assert_eq!(h.imp(&x, &y).unwrap(), want);
    }

    #[test]
    fn product_identity_fails_only_off_product_chains(n in 3usize..7) {
        let eq = parse_equation("~x1 \\/ ((x1 -> x1 * x2) -> x2) = 1", Signature::FULL).unwrap();
        let r = check_equation(&godel_chain(n).unwrap(), &eq, Strategy::Exhaustive).unwrap();
        prop_assert!(r.is_refuted());
        prop_assert_eq!(goedel(n).product_identity(), false);
    }
}
