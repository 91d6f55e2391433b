//! Filters, congruences and the structure they carry.

mod congruence;
mod filter;

pub use congruence::{
    all_congruences, congruence_from_filter, filter_from_congruence, quotient, Congruence,
    CongruenceJson,
};
pub use filter::{
    all_filters, all_filters_by_generation, all_filters_by_subsets, boolean_skeleton,
    filter_generate, is_maximal_filter_witnessed, maximal_filters, radical, Filter, FilterJson,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{classify, find_isomorphism, Label, Strategy};
    use crate::catalog;

    fn names(fs: &[Filter]) -> Vec<Vec<String>> {
        fs.iter().map(|f| f.names().unwrap()).collect()
    }

    #[test]
    fn filters_of_small_algebras() {
        let g3 = catalog::godel_chain(3).unwrap();
        assert_eq!(
            names(&all_filters(&g3).unwrap()),
            vec![vec!["1"], vec!["a", "1"], vec!["0", "a", "1"]]
        );
        assert_eq!(names(&maximal_filters(&g3).unwrap()), vec![vec!["a", "1"]]);
        assert_eq!(radical(&g3).unwrap().names().unwrap(), ["a", "1"]);

        let b2 = catalog::bool_algebra(2).unwrap();
        assert_eq!(all_filters(&b2).unwrap().len(), 4);
        assert_eq!(maximal_filters(&b2).unwrap().len(), 2);
        assert_eq!(radical(&b2).unwrap().names().unwrap(), ["1"]);

        let b1 = catalog::bool_algebra(1).unwrap();
        assert_eq!(names(&maximal_filters(&b1).unwrap()), vec![vec!["1"]]);

        let trivial = catalog::bool_algebra(0).unwrap();
        assert_eq!(all_filters(&trivial).unwrap().len(), 1);
        assert!(maximal_filters(&trivial).unwrap().is_empty());
    }

    #[test]
    fn generation() {
        let l2 = catalog::mv_chain(2).unwrap();
        let half = l2.element_by_name("1/2", 0).unwrap();
        assert_eq!(filter_generate(&l2, &[half]).unwrap().len(), Some(3));
        let g3 = catalog::godel_chain(3).unwrap();
        let a = g3.element_by_name("a", 0).unwrap();
        assert_eq!(filter_generate(&g3, &[a]).unwrap().names().unwrap(), ["a", "1"]);
        assert_eq!(filter_generate(&g3, &[g3.one()]).unwrap().len(), Some(1));
    }

    #[test]
    fn congruences() {
        let g3 = catalog::godel_chain(3).unwrap();
        let a = g3.element_by_name("a", 0).unwrap();
        let f = filter_generate(&g3, &[a]).unwrap();
        let c = congruence_from_filter(&f).unwrap();
        assert_eq!(c.block_names(), vec![vec!["0"], vec!["a", "1"]]);
        assert_eq!(filter_from_congruence(&c).unwrap(), f);
        let q = quotient(&g3, &f).unwrap();
        assert!(find_isomorphism(&q, &catalog::bool_algebra(1).unwrap())
            .unwrap()
            .is_some());
        assert_eq!(all_congruences(&g3).unwrap().len(), 3);
    }

    #[test]
    fn skeleton_and_witnessed_maximality() {
        let g3 = catalog::godel_chain(3).unwrap();
        let s = boolean_skeleton(&g3).unwrap();
        assert_eq!(s.finite().unwrap().names(), ["0", "1"]);
        assert!(classify(&s, Strategy::Exhaustive).unwrap().has(Label::Boolean));

        let a = g3.element_by_name("a", 0).unwrap();
        let f = filter_generate(&g3, &[a]).unwrap();
        let r = is_maximal_filter_witnessed(&g3, &f, Strategy::Exhaustive, None).unwrap();
        assert!(r.passed());
        let full = all_filters(&g3).unwrap().pop().unwrap();
        assert!(matches!(
            is_maximal_filter_witnessed(&g3, &full, Strategy::Exhaustive, None),
            Err(crate::Error::NotProper)
        ));
    }
}
