use proptest::prelude::*;

use racg_formality::f2::BitVector;
use racg_formality::moment_angle::{build_cubical, fixed_subcomplex, invariant_cells};
use racg_formality::simplicial::underlying_graph;
use racg_formality::{
    clique_complex, hochster_complex_betti, hochster_real_betti, is_flag, reduced_betti, restriction_is_trivial,
    FormalityAnalyzer, Graph, SimplicialComplex, Subgroup, VertexSet,
};

fn complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(|m| {
        let full = (1u32 << m) - 1;
        prop::collection::vec(1..=full, 0..6).prop_map(move |facets| {
            let singletons = (1..=m as u32).map(VertexSet::singleton);
            let facets = facets.into_iter().map(VertexSet::from_bits).chain(singletons);
            SimplicialComplex::from_facets(VertexSet::full(m), facets).unwrap()
        })
    })
}

fn graph(max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_m).prop_flat_map(|m| {
        let pairs: Vec<(u32, u32)> = (1..=m as u32)
            .flat_map(|a| (a + 1..=m as u32).map(move |b| (a, b)))
            .collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(u32, u32)> = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e).collect();
            Graph::new(m, &edges).unwrap()
        })
    })
}

fn complex_and_subset(max_m: usize) -> impl Strategy<Value = (SimplicialComplex, VertexSet)> {
    complex(max_m).prop_flat_map(|k| {
        let full = k.ambient().bits();
        (Just(k), (0..=full).prop_map(move |b| VertexSet::from_bits(b & full)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faces_are_downward_closed(k in complex(7)) {
        for &f in k.faces() {
            for v in f.iter() {
                prop_assert!(k.contains(f.without(v)));
            }
        }
    }

    #[test]
    fn full_subcomplex_and_link_are_subcomplexes((k, j) in complex_and_subset(6)) {
        let sub = k.full_subcomplex(j);
        prop_assert!(sub.faces().iter().all(|&f| k.contains(f) && f.is_subset(j)));
        prop_assert_eq!(sub.faces().len(), k.faces().iter().filter(|f| f.is_subset(j)).count());
        if k.contains(j) {
            let link = k.link(j).unwrap();
            prop_assert_eq!(link.ambient(), k.ambient().difference(j));
            for &f in link.faces() {
                prop_assert!(f.is_disjoint(j) && k.contains(f.union(j)));
            }
        } else {
            prop_assert!(k.link(j).is_err());
        }
    }

    #[test]
    fn clique_complexes_are_flag(g in graph(7)) {
        let k = clique_complex(&g);
        prop_assert!(is_flag(&k));
        prop_assert_eq!(underlying_graph(&k), g);
    }

    #[test]
    fn json_round_trip(k in complex(7)) {
        let text = serde_json::to_string(&k).unwrap();
        prop_assert_eq!(serde_json::from_str::<SimplicialComplex>(&text).unwrap(), k);
    }

    #[test]
    fn acyclic_complexes_restrict_trivially((k, j) in complex_and_subset(6)) {
        if reduced_betti(&k).is_zero() {
            prop_assert!(restriction_is_trivial(&k, j));
        }
        prop_assert_eq!(restriction_is_trivial(&k, k.ambient()), reduced_betti(&k).is_zero());
    }

    #[test]
    fn real_and_complex_totals_agree(k in complex(8)) {
        let real = hochster_real_betti(&k).unwrap();
        let complex = hochster_complex_betti(&k).unwrap();
        prop_assert_eq!(real.total(), complex.total());
    }

    #[test]
    fn fixed_set_never_exceeds_space((k, i) in complex_and_subset(6)) {
        let analyzer = FormalityAnalyzer::new(&k).unwrap();
        let fixed = analyzer.fixed_betti(i).unwrap().total();
        let ambient = hochster_real_betti(&k).unwrap().total();
        prop_assert!(fixed <= ambient);
        for r in analyzer.cross_check(i).unwrap() {
            prop_assert_eq!(r.verdict.is_formal(), fixed == ambient);
        }
    }

    #[test]
    fn subgroup_verdict_depends_only_on_hull(
        k in complex(5),
        gens in prop::collection::vec(any::<u32>(), 0..4),
    ) {
        let m = k.m();
        let gens: Vec<BitVector> =
            gens.into_iter().map(|b| BitVector::from_vertex_set(m, VertexSet::from_bits(b & ((1 << m) - 1)))).collect();
        let a = Subgroup::new(m, gens.clone()).unwrap();
        let hull = a.hull();
        let analyzer = FormalityAnalyzer::new(&k).unwrap();
        let via_a = analyzer.decide(&a).unwrap();
        let via_hull = analyzer.decide(&Subgroup::coordinate(m, hull)).unwrap();
        prop_assert_eq!(via_a.verdict, via_hull.verdict);
        prop_assert_eq!(via_a.hull, hull);

        let model = build_cubical(&k, true).unwrap();
        let fixed = invariant_cells(&model, &gens).unwrap();
        let by_hull = fixed_subcomplex(&model, hull).unwrap();
        prop_assert_eq!(fixed.as_slice(), by_hull.cells());
    }

    #[test]
    fn hull_is_smallest_coordinate_subgroup(gens in prop::collection::vec(any::<u32>(), 0..5), m in 1usize..10) {
        let mask = (1u32 << m) - 1;
        let gens: Vec<BitVector> =
            gens.into_iter().map(|b| BitVector::from_vertex_set(m, VertexSet::from_bits(b & mask))).collect();
        let a = Subgroup::new(m, gens.clone()).unwrap();
        let union = gens.iter().fold(VertexSet::EMPTY, |acc, g| acc.union(g.support()));
        prop_assert_eq!(a.hull(), union);
        let coord = Subgroup::coordinate(m, a.hull());
        prop_assert!(gens.iter().all(|g| coord.contains(g)));
        prop_assert_eq!(coord.hull(), a.hull());
        prop_assert_eq!(a.rank() + a.corank(), m);
    }
}
