mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use reslat::algebra::{find_isomorphism, Algebra, CheckStatus, Element, Strategy};
use reslat::catalog::{bool_algebra, build_str, godel_chain, mv_chain, nk};
use reslat::constructions::lift;
use reslat::structure::{
    all_congruences, all_filters, all_filters_by_generation, all_filters_by_subsets,
    boolean_skeleton, congruence_from_filter, filter_from_congruence, filter_generate,
    is_maximal_filter_witnessed, maximal_filters, quotient, radical, Congruence, Filter,
};
use reslat::Error;

fn g3() -> Algebra {
    godel_chain(3).unwrap()
}

fn names(fs: &[Filter]) -> Vec<Vec<String>> {
    fs.iter().map(|f| f.names().unwrap()).collect()
}

fn gen(alg: &Algebra, xs: &[&str]) -> Vec<String> {
    let els: Vec<Element> = xs.iter().map(|x| element(alg, x)).collect();
    filter_generate(alg, &els).unwrap().names().unwrap()
}

#[test]
fn generated_filters() {
    for alg in [g3(), mv_chain(2).unwrap(), bool_algebra(2).unwrap()] {
        assert_eq!(gen(&alg, &["1"]), ["1"]);
        assert_eq!(gen(&alg, &[]), ["1"]);
    }
    assert_eq!(gen(&mv_chain(2).unwrap(), &["1/2"]), ["0", "1/2", "1"]);
    assert_eq!(gen(&g3(), &["a"]), ["a", "1"]);
    assert_eq!(gen(&bool_algebra(2).unwrap(), &["a", "b"]).len(), 4);
}

#[test]
fn filter_lists() {
    assert_eq!(
        names(&all_filters(&g3()).unwrap()),
        vec![vec!["1"], vec!["a", "1"], vec!["0", "a", "1"]]
    );
    // {1}, the two ultrafilters and the whole algebra.
    let b2 = all_filters(&bool_algebra(2).unwrap()).unwrap();
    assert_eq!(
        names(&b2),
        vec![vec!["1"], vec!["a", "1"], vec!["b", "1"], vec!["0", "a", "b", "1"]]
    );
    assert_eq!(names(&all_filters(&bool_algebra(0).unwrap()).unwrap()), vec![vec!["1"]]);
}

#[test]
fn maximal_filter_lists() {
    assert_eq!(names(&maximal_filters(&g3()).unwrap()), vec![vec!["a", "1"]]);
    assert_eq!(
        names(&maximal_filters(&bool_algebra(2).unwrap()).unwrap()),
        vec![vec!["a", "1"], vec!["b", "1"]]
    );
    assert_eq!(names(&maximal_filters(&bool_algebra(1).unwrap()).unwrap()), vec![vec!["1"]]);
}

#[test]
fn radicals() {
    assert_eq!(radical(&g3()).unwrap().names().unwrap(), ["a", "1"]);
    assert_eq!(radical(&bool_algebra(2).unwrap()).unwrap().names().unwrap(), ["1"]);
    let p = lift(&nk(1)).unwrap();
    let r = radical(&p).unwrap();
    assert!(!r.contains(&Element::bottom()));
    assert!(p.sample(10).iter().skip(1).all(|x| r.contains(x)));
    assert!(matches!(radical(&nk(1)), Err(Error::Symbolic(_))));
}

#[test]
fn skeletons() {
    let s = boolean_skeleton(&g3()).unwrap();
    let mut n: Vec<String> = s.elements().unwrap().iter().map(|e| s.render(e)).collect();
    n.sort();
    assert_eq!(n, ["0", "1"]);
    for k in 0..=3 {
        let b = bool_algebra(k).unwrap();
        assert_eq!(boolean_skeleton(&b).unwrap().elements().unwrap().len(), 1 << k);
    }
    let s = boolean_skeleton(&lift(&nk(1)).unwrap()).unwrap();
    assert_eq!(s.elements().unwrap().len(), 2);
}

#[test]
fn filters_and_congruences() {
    let g = g3();
    let one = Filter::from_elements(&g, &[g.one()]).unwrap();
    let c = congruence_from_filter(&one).unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(filter_from_congruence(&c).unwrap(), one);

    let full = Filter::from_elements(&g, g.elements().unwrap()).unwrap();
    let c = congruence_from_filter(&full).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(filter_from_congruence(&c).unwrap(), full);

    let fa = Filter::from_elements(&g, &[element(&g, "a"), g.one()]).unwrap();
    let c = congruence_from_filter(&fa).unwrap();
    assert_eq!(c.block_names(), vec![vec!["0"], vec!["a", "1"]]);
    let by_hand = Congruence::from_blocks(
        &g,
        &[vec![element(&g, "0")], vec![element(&g, "a"), g.one()]],
    )
    .unwrap();
    assert_eq!(by_hand, c);
    assert_eq!(filter_from_congruence(&by_hand).unwrap(), fa);

    // 0 ~ a would force 0 -> 0 = 1 ~ a -> 0 = 0.
    assert!(matches!(
        Congruence::from_blocks(&g, &[vec![element(&g, "0"), element(&g, "a")], vec![g.one()]]),
        Err(Error::NotACongruence(_))
    ));
}

#[test]
fn quotients() {
    let g = g3();
    let fa = Filter::from_elements(&g, &[element(&g, "a"), g.one()]).unwrap();
    let q = quotient(&g, &fa).unwrap();
    assert!(find_isomorphism(&q, &bool_algebra(1).unwrap()).unwrap().is_some());
    for alg in [godel_chain(5).unwrap(), mv_chain(4).unwrap(), bool_algebra(3).unwrap()] {
        for f in all_filters(&alg).unwrap() {
            let q = quotient(&alg, &f).unwrap();
            let blocks = congruence_from_filter(&f).unwrap().len();
            assert_eq!(q.elements().unwrap().len(), blocks);
        }
    }
}

#[test]
fn maximality_witnesses() {
    let g = g3();
    let fa = Filter::from_elements(&g, &[element(&g, "a"), g.one()]).unwrap();
    let r = is_maximal_filter_witnessed(&g, &fa, Strategy::Exhaustive, None).unwrap();
    assert_eq!(r.status, CheckStatus::Valid);
    let one = Filter::from_elements(&g, &[g.one()]).unwrap();
    assert!(is_maximal_filter_witnessed(&g, &one, Strategy::Exhaustive, None)
        .unwrap()
        .is_refuted());
    let full = Filter::from_elements(&g, g.elements().unwrap()).unwrap();
    assert!(matches!(
        is_maximal_filter_witnessed(&g, &full, Strategy::Exhaustive, None),
        Err(Error::NotProper)
    ));
    // The radical of 2 + N is maximal; every outsider is the bottom.
    let p = lift(&nk(1)).unwrap();
    let rad = radical(&p).unwrap();
    let r = is_maximal_filter_witnessed(&p, &rad, Strategy::Bounded(8), None).unwrap();
    assert!(matches!(r.status, CheckStatus::BoundedValid { .. }));
}

#[test]
fn both_filter_routes_agree() {
    for src in [
        "godel_chain(6)",
        "mv_chain(6)",
        "bool(3)",
        "lift(two0())",
        "direct_product(godel_chain(3), mv_chain(2))",
    ] {
        let a = build_str(src).unwrap();
        let by_gen = all_filters_by_generation(&a).unwrap();
        let by_sub = all_filters_by_subsets(&a).unwrap();
        assert_eq!(by_gen, by_sub, "{src}");
        let oracle: BTreeSet<BTreeSet<usize>> = brute_filters(&a).into_iter().collect();
        let mine: BTreeSet<BTreeSet<usize>> =
            by_gen.iter().map(|f| indices(&a, &f.names().unwrap())).collect();
        assert_eq!(mine, oracle, "{src}");
        assert_eq!(all_congruences(&a).unwrap().len(), by_gen.len(), "{src}");
    }
}

#[test]
fn filter_json_is_stable() {
    let g = g3();
    let fa = Filter::from_elements(&g, &[g.one(), element(&g, "a")]).unwrap();
    let j = serde_json::to_string(&fa.to_json()).unwrap();
    assert_eq!(j, serde_json::to_string(&fa.to_json()).unwrap());
    assert!(j.contains("\"a\"") && j.contains("godel_chain(3)"));
}

#[test]
fn non_filters_are_rejected() {
    let g = g3();
    assert!(matches!(
        Filter::from_elements(&g, &[element(&g, "a")]),
        Err(Error::NotAFilter(_))
    ));
    let l2 = mv_chain(2).unwrap();
    // {1/2, 1} is upward closed but 1/2 * 1/2 = 0 escapes.
    assert!(matches!(
        Filter::from_elements(&l2, &[element(&l2, "1/2"), l2.one()]),
        Err(Error::NotAFilter(_))
    ));
}

fn intersection_oracle(alg: &Algebra, mask: u32) -> BTreeSet<usize> {
    let n = alg.elements().unwrap().len();
    brute_filters(alg)
        .into_iter()
        .filter(|f| (0..n).all(|i| mask & (1 << i) == 0 || f.contains(&i)))
        .reduce(|a, b| a.intersection(&b).copied().collect())
        .unwrap()
}

proptest! {
    #[test]
    fn generation_is_the_least_filter(which in 0usize..4, mask in 0u32..256) {
        let alg = match which {
            0 => godel_chain(6).unwrap(),
            1 => mv_chain(5).unwrap(),
            2 => bool_algebra(3).unwrap(),
            _ => build_str("lift(two0())").unwrap(),
        };
        let els = alg.elements().unwrap().to_vec();
        let mask = mask & ((1u32 << els.len()) - 1);
        let xs: Vec<Element> =
            (0..els.len()).filter(|i| mask & (1 << i) != 0).map(|i| els[i].clone()).collect();
        let f = filter_generate(&alg, &xs).unwrap();
        prop_assert_eq!(indices(&alg, &f.names().unwrap()), intersection_oracle(&alg, mask));
    }

    #[test]
    fn congruence_round_trip(which in 0usize..3, pick in 0usize..16) {
        let alg = match which {
            0 => godel_chain(5).unwrap(),
            1 => mv_chain(4).unwrap(),
            _ => bool_algebra(3).unwrap(),
        };
        let fs = all_filters(&alg).unwrap();
        let f = &fs[pick % fs.len()];
        let c = congruence_from_filter(f).unwrap();
        prop_assert_eq!(&filter_from_congruence(&c).unwrap(), f);
        // x ~ y iff both implications land in the filter.
        for x in alg.elements().unwrap() {
            for y in alg.elements().unwrap() {
                let both = f.contains(&alg.imp(x, y).unwrap()) && f.contains(&alg.imp(y, x).unwrap());
                prop_assert_eq!(c.related(x, y), both);
            }
        }
    }
}
