mod common;

use std::collections::BTreeSet;

use common::alg;
use stringz::bands::{enumerate_bands, is_domestic, least_band_rotation, Domesticity};
use stringz::spectrum::strings_up_to;
use stringz::words::{is_string, letters_text, parse_letters, primitive_root_len, Letter};
use stringz::StringAlgebra;

fn census(name: &str) -> Option<usize> {
    match is_domestic(&alg(name)) {
        Domesticity::Domestic(b) => Some(b.n_domestic()),
        Domesticity::NonDomestic(_) => None,
    }
}

#[test]
fn preset_census() {
    for (name, n) in [("kron", 1), ("x1", 1), ("x3", 1), ("lam2", 2), ("lam3", 3), ("x4", 3), ("x5", 4), ("a2", 0)] {
        assert_eq!(census(name), Some(n), "{name}");
    }
    assert_eq!(census("gp23"), None);
}

#[test]
fn x1_band() {
    let a = alg("x1");
    let bands = enumerate_bands(&a).unwrap();
    let reps: Vec<String> = bands.classes().iter().map(|c| letters_text(&a, &c.repr)).collect();
    assert_eq!(reps, ["a g a- b-", "b a g- a-"]);
    assert_eq!(bands.inverse(0), 1);
}

#[test]
fn lam2_bands() {
    let a = alg("lam2");
    let bands = enumerate_bands(&a).unwrap();
    let primary: Vec<String> =
        bands.classes().iter().filter(|c| c.is_primary()).map(|c| letters_text(&a, &c.repr)).collect();
    assert_eq!(primary, ["a b-", "d e-"]);
}

#[test]
fn a2_has_no_bands() {
    assert!(enumerate_bands(&alg("a2")).unwrap().is_empty());
}

#[test]
fn gp23_witness() {
    let a = alg("gp23");
    let w = enumerate_bands(&a).unwrap_err();
    assert_eq!(w.display(&a), ("a b-".to_string(), "a b- b-".to_string()));
    assert_eq!(w.first[0], w.second[0]);
}

#[test]
fn canonical_band_offsets() {
    let a = alg("x1");
    let bands = enumerate_bands(&a).unwrap();
    let w = parse_letters(&a, "g a- b- a").unwrap();
    let m = bands.canonical_band(&w).unwrap();
    assert_eq!(m.class, 0);
    let mut r = w.clone();
    r.rotate_left(m.offset);
    assert_eq!(r, bands.repr(0));
    let m = bands.canonical_band(bands.repr(0)).unwrap();
    assert_eq!(m.offset, 0);

    let k = alg("kron");
    let kb = enumerate_bands(&k).unwrap();
    let m = kb.canonical_band(&parse_letters(&k, "b a-").unwrap()).unwrap();
    assert_eq!(kb.inverse(0), m.class);
    assert!(m.inverted);
    assert!(kb.canonical_band(&parse_letters(&k, "a").unwrap()).is_err());
}

/// Brute force: primitive cyclic words whose third power is a string and
/// that mix directions, up to rotation.
fn brute_bands(a: &StringAlgebra, max_len: usize) -> BTreeSet<Vec<Letter>> {
    let mut out = BTreeSet::new();
    for w in strings_up_to(a, max_len) {
        if w.is_empty() || primitive_root_len(&w) != w.len() {
            continue;
        }
        if is_string(a, &w.repeat(3 + a.max_relation_len())).is_err() {
            continue;
        }
        if let Some(r) = least_band_rotation(&w) {
            out.insert(r);
        }
    }
    out
}

#[test]
fn automaton_agrees_with_brute_force() {
    for name in ["kron", "x1", "x3", "lam2", "lam3", "x4"] {
        let a = alg(name);
        let bands = enumerate_bands(&a).unwrap();
        let ours: BTreeSet<Vec<Letter>> = bands.classes().iter().map(|c| c.repr.clone()).collect();
        assert_eq!(brute_bands(&a, 8), ours, "{name}");
    }
}

#[test]
fn gp23_bands_keep_growing() {
    let a = alg("gp23");
    assert!(brute_bands(&a, 6).len() > brute_bands(&a, 3).len());
}

#[test]
fn representatives_start_direct_and_end_inverse() {
    for name in ["kron", "x1", "x3", "lam2", "lam3", "x4", "x5"] {
        let bands = enumerate_bands(&alg(name)).unwrap();
        for c in bands.classes() {
            assert!(c.repr[0].is_direct() && !c.repr.last().unwrap().is_direct());
            assert_eq!(bands.inverse(c.inverse), c.id);
        }
    }
}
