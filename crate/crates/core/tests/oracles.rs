mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{naive_reduced_betti, random_complex};
use racg_formality::census::all_complexes;
use racg_formality::moment_angle::{build_cubical, cubical_betti, fixed_subcomplex};
use racg_formality::{
    hochster_complex_betti, hochster_real_betti, reduced_betti, FormalityAnalyzer, SimplicialComplex, VertexSet,
};

fn small_complexes() -> Vec<SimplicialComplex> {
    (1..=4).flat_map(all_complexes).collect()
}

#[test]
fn reduced_betti_matches_naive_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random = (0..60).map(|n| random_complex(&mut rng, 5 + n % 3, 2 + n % 5, 4));
    for k in small_complexes().into_iter().chain(random) {
        assert_eq!(reduced_betti(&k).dims, naive_reduced_betti(&k), "{:?}", k.facets());
    }
}

#[test]
fn reduced_euler_characteristic_matches_face_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 0..80 {
        let k = random_complex(&mut rng, 4 + n % 4, 1 + n % 6, 5);
        assert_eq!(
            reduced_betti(&k).euler_characteristic(),
            k.reduced_euler_characteristic()
        );
    }
}

#[test]
fn hochster_matches_both_cubical_models() {
    for k in small_complexes() {
        let h = hochster_real_betti(&k).unwrap();
        assert_eq!(cubical_betti(&build_cubical(&k, false).unwrap()), h, "{:?}", k.facets());
        assert_eq!(cubical_betti(&build_cubical(&k, true).unwrap()), h, "{:?}", k.facets());
    }
}

#[test]
fn cubical_euler_characteristic_is_hochster_alternating_sum() {
    for k in small_complexes() {
        let c = build_cubical(&k, false).unwrap();
        let h = hochster_real_betti(&k).unwrap();
        let alt: i64 = h
            .dims()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        assert_eq!(c.euler_characteristic(), alt);
    }
}

/// The Betti-sum verdict recomputed entirely inside the subdivided cubical model,
/// without Hochster sums or links.
#[test]
fn criteria_match_cubical_fixed_point_count() {
    for k in small_complexes() {
        let model = build_cubical(&k, true).unwrap();
        let total = cubical_betti(&model).total();
        let analyzer = FormalityAnalyzer::new(&k).unwrap();
        for i in k.ambient().subsets() {
            let fixed = cubical_betti(&fixed_subcomplex(&model, i).unwrap()).total();
            let verdict = analyzer.general_criterion(i).unwrap().verdict;
            assert_eq!(verdict.is_formal(), fixed == total, "{:?} I={i}", k.facets());
        }
    }
}

#[test]
fn complex_betti_degree_shift_by_hand() {
    // Z_K of ∂Δ² is S⁵ and of two points is S³.
    let tri = hochster_complex_betti(&SimplicialComplex::simplex_boundary(3)).unwrap();
    assert_eq!(tri.nonzero_degrees(), vec![0, 5]);
    let two = hochster_complex_betti(&SimplicialComplex::points(2)).unwrap();
    assert_eq!(two.nonzero_degrees(), vec![0, 3]);
    let ghost = SimplicialComplex::empty_face(VertexSet::full(2));
    // (D², S¹)^{∅} on two ghosts is the torus T².
    assert_eq!(hochster_complex_betti(&ghost).unwrap().dims(), &[1, 2, 1]);
}
