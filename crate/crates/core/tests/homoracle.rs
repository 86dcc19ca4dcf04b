mod common;

use common::{alg, analysis, class, finite};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stringz::homoracle::{
    build_band_module, build_string_module, graph_map_count, graph_maps, hom_dim_oracle, Q,
};
use stringz::sample::random_word;

#[test]
fn kron_word_module() {
    let a = alg("kron");
    let m = build_string_module(&a, &finite(&a, "a"));
    assert_eq!(m.dims, vec![1, 1]);
    assert_eq!(m.maps[0].get(0, 0), &Q::one());
    assert!(m.maps[1].is_zero());
}

#[test]
fn kron_band_module() {
    let an = analysis("kron");
    let b = class(&an, "a b-");
    let m = build_band_module(an.alg(), an.bands(), b, 3, 1).unwrap();
    assert_eq!(m.dims, vec![1, 1]);
    let entries = [m.maps[0].get(0, 0).clone(), m.maps[1].get(0, 0).clone()];
    let lam = Q::from_integer(3.into());
    assert!(entries.contains(&lam) && entries.contains(&Q::one()));
    assert!(build_band_module(an.alg(), an.bands(), b, 0, 1).is_err());
}

#[test]
fn x1_word_module() {
    let a = alg("x1");
    let m = build_string_module(&a, &finite(&a, "a g a- b- a"));
    assert_eq!(m.dimension(), 6);
    assert!(m.satisfies_relations(&a));
}

#[test]
fn kron_counts() {
    let a = alg("kron");
    let (ab, al) = (finite(&a, "a b-"), finite(&a, "a"));
    assert_eq!(graph_map_count(&a, &ab, &al), 1);
    assert_eq!(graph_map_count(&a, &al, &ab), 0);
    let (mab, mal) = (build_string_module(&a, &ab), build_string_module(&a, &al));
    assert_eq!(hom_dim_oracle(&a, &mab, &mal), 1);
    assert_eq!(hom_dim_oracle(&a, &mal, &mab), 0);
    let g = graph_maps(&a, &ab, &al);
    assert_eq!((g[0].factor_at, g[0].len), (0, 1));
}

#[test]
fn kron_band_homs() {
    let an = analysis("kron");
    let b = class(&an, "a b-");
    let m = |l, n| build_band_module(an.alg(), an.bands(), b, l, n).unwrap();
    assert_eq!(hom_dim_oracle(an.alg(), &m(2, 1), &m(2, 1)), 1);
    assert_eq!(hom_dim_oracle(an.alg(), &m(2, 1), &m(5, 1)), 0);
    assert_eq!(hom_dim_oracle(an.alg(), &m(2, 2), &m(2, 2)), 2);
}

#[test]
fn band_modules_satisfy_relations() {
    for name in ["kron", "x1", "x3", "lam2", "lam3", "x4"] {
        let an = analysis(name);
        for c in an.bands().classes() {
            for n in 1..=3 {
                let m = build_band_module(an.alg(), an.bands(), c.id, -2, n).unwrap();
                assert!(m.satisfies_relations(an.alg()), "{name}");
                assert!(hom_dim_oracle(an.alg(), &m, &m) >= n);
            }
        }
    }
}

#[test]
fn identity_is_always_counted() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["kron", "x1", "x3", "lam2"] {
        let a = alg(name);
        for _ in 0..30 {
            let u = random_word(&a, &mut rng, 8);
            assert!(graph_map_count(&a, &u, &u) >= 1);
            let m = build_string_module(&a, &u);
            assert!(m.satisfies_relations(&a));
            assert!(hom_dim_oracle(&a, &m, &m) >= 1);
        }
    }
}

/// Graph maps against the linear-algebra oracle on 200 seeded pairs per
/// preset, length at most 8.
#[test]
fn graph_maps_match_the_oracle() {
    for (k, name) in ["kron", "x1", "x3", "lam2"].iter().enumerate() {
        let a = alg(name);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        for _ in 0..200 {
            let u = random_word(&a, &mut rng, 8);
            let v = random_word(&a, &mut rng, 8);
            let ours = graph_map_count(&a, &u, &v);
            let oracle = hom_dim_oracle(&a, &build_string_module(&a, &u), &build_string_module(&a, &v));
            assert_eq!(ours, oracle, "{name}: {} -> {}", u.display(&a), v.display(&a));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_maps_match_the_oracle_prop(seed: u64, p in 0..4usize) {
        let name = ["kron", "x1", "x3", "lam2"][p];
        let a = alg(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_word(&a, &mut rng, 8);
        let v = random_word(&a, &mut rng, 8);
        let oracle = hom_dim_oracle(&a, &build_string_module(&a, &u), &build_string_module(&a, &v));
        prop_assert_eq!(graph_map_count(&a, &u, &v), oracle);
    }

    #[test]
    fn rank_of_zero_rows(n in 0..5usize) {
        prop_assert_eq!(stringz::homoracle::rank(vec![vec![Q::zero(); n]; 3]), 0);
    }
}
