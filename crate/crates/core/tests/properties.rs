mod common;

use std::collections::BTreeMap;

use common::{braid_lift, closure};
use eqkh::annular::build_annular_complex;
use eqkh::chromatic::{build_graph_complex, chromatic_euler_check, Graph};
use eqkh::diagram::lift_fundamental_domain;
use eqkh::equivariant::{check_equivariance, khovanov_equivariant};
use eqkh::khovanov::{build_complex, Flavor, KhOptions, StateSpace};
use eqkh::oracles::{bracket_statesum, dense_homology, jones_from_bracket, DENSE_CAP};
use eqkh::{homology, Grading, HomologyTable, LaurentPoly, Tangle};
use proptest::prelude::*;

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2..=max_strands).prop_flat_map(move |s| {
        let letter = (1..s as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        (Just(s), prop::collection::vec(letter, 0..=max_len))
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e);
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_and_euler((s, w) in braid(4, 7)) {
        let d = closure(s, &w);
        let c = build_complex(&d, Flavor::Oriented, &KhOptions::default()).unwrap();
        prop_assert!(c.d_squared_violations().is_empty());
        let b = bracket_statesum(&d, 16).unwrap();
        prop_assert_eq!(homology(&c).euler_polynomial(), jones_from_bracket(&b, d.writhe().unwrap()));
        prop_assert_eq!(c.chain_euler_polynomial(), homology(&c).euler_polynomial());
    }

    #[test]
    fn dense_and_sparse_agree((s, w) in braid(3, 6)) {
        let c = build_complex(&closure(s, &w), Flavor::Framed, &KhOptions::default()).unwrap();
        prop_assert_eq!(dense_homology(&c, DENSE_CAP).unwrap(), homology(&c));
    }

    #[test]
    fn action_preserves_gradings((s, w) in braid(3, 3)) {
        let (d, a) = braid_lift(s, &w, 3);
        let space = StateSpace::new(&d, &KhOptions::default()).unwrap();
        for st in space.states() {
            let img = space.act(&a, &st);
            prop_assert_eq!(space.grading(&img, Flavor::Oriented).unwrap(), space.grading(&st, Flavor::Oriented).unwrap());
            let mut back = st;
            for _ in 0..3 {
                back = space.act(&a, &back);
            }
            prop_assert_eq!(back, st);
        }
        let c = space.complex(Flavor::Oriented).unwrap();
        prop_assert!(check_equivariance(&c, &|x| space.act(&a, x)).unwrap().commutes());
        let e = khovanov_equivariant(&d, &a, Flavor::Oriented, &KhOptions::default()).unwrap();
        prop_assert!(e.quotient.d_squared_violations().is_empty());
    }

    #[test]
    fn single_copy_lift_is_closure((s, w) in braid(4, 6)) {
        let t = Tangle::braid(s, &w).unwrap();
        let (lifted, a) = lift_fundamental_domain(&t, 1).unwrap();
        prop_assert!(lifted.is_isomorphic(&t.closure().unwrap()));
        prop_assert_eq!(a.order(), 1);
    }

    #[test]
    fn annular_chain_dims_sum((s, w) in braid(3, 3)) {
        let (d, _) = braid_lift(s, &w, 3);
        let c = build_annular_complex(&d, &KhOptions::default()).unwrap();
        prop_assert!(c.complex.d_squared_violations().is_empty());
        let full = build_complex(&d, Flavor::Framed, &KhOptions::default()).unwrap();
        let mut summed: BTreeMap<Grading, usize> = BTreeMap::new();
        for (g, n) in c.complex.chain_dims() {
            *summed.entry(Grading::new(g.h, g.q)).or_insert(0) += n;
        }
        prop_assert_eq!(summed, full.chain_dims());
    }

    #[test]
    fn graph_complex_properties(g in graph(5)) {
        let c = build_graph_complex(&g, 16).unwrap();
        prop_assert!(c.d_squared_violations().is_empty());
        prop_assert!(chromatic_euler_check(&g, 16).unwrap().passed());
    }

    #[test]
    fn table_json_roundtrip(entries in prop::collection::btree_map((-5i32..5, -9i32..9, prop::option::of(-3i32..3)), 1usize..4, 0..8)) {
        let t = HomologyTable::from_dims(entries.into_iter().map(|((h, q, k), d)| (Grading { h, q, k }, d)));
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<HomologyTable>(&json).unwrap(), t);
    }

    #[test]
    fn polynomial_text_roundtrip(terms in prop::collection::vec((-6i32..6, -4i64..4), 0..6)) {
        let p = LaurentPoly::from_terms(terms);
        prop_assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
    }
}
