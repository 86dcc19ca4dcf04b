mod common;

use common::alg;
use stringz::presentation::{parse_presentation, ParseErrorKind, Violation};
use stringz::presets::{preset, preset_source, PRESETS};
use stringz::words::{Letter, Side};
use stringz::StringAlgebra;

#[test]
fn lam2_shape() {
    let p = preset("lam2").unwrap();
    assert_eq!((p.vertices.len(), p.arrows.len(), p.relations.len()), (4, 5, 2));
}

#[test]
fn x3_shape() {
    let p = preset("x3").unwrap();
    assert_eq!((p.vertices.len(), p.arrows.len(), p.relations.len()), (1, 2, 3));
}

#[test]
fn empty_quiver_parses() {
    let p = parse_presentation("algebra nothing\n").unwrap();
    assert!(p.vertices.is_empty() && p.arrows.is_empty());
    assert!(StringAlgebra::new(p).is_ok());
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_presentation("algebra x\nvertices: 1 2\narrows: a: 1 -> 3\n").unwrap_err();
    assert_eq!(e.line, 3);
    assert!(matches!(e.kind, ParseErrorKind::UnknownVertex(ref v) if v == "3"));
    assert!(e.column > 1);

    let e = parse_presentation("algebra x\nvertices: 1 1\n").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::DuplicateVertex(_)));

    let e = parse_presentation("algebra x\nvertices: 1 2\narrows: a: 1 -> 2\nrelations: a a\n")
        .unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::NotComposable(_)));

    let e = parse_presentation("algebra x\nvertices: 1\narrows: a: 1 -> 1\nrelations: a\n")
        .unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::ShortRelation(_)));
}

#[test]
fn valid_presets() {
    for name in ["kron", "a2", "lam2", "lam3", "x1", "x3", "x4", "gp23"] {
        assert!(alg(name).is_valid(), "{name}: {:?}", alg(name).violations());
    }
}

#[test]
fn x5_as_drawn_breaks_uniqueness() {
    let v = alg("x5").violations().to_vec();
    assert!(v.iter().any(|v| matches!(v, Violation::PredecessorNotUnique { arrow, .. } if arrow == "a2")));
}

#[test]
fn three_arrows_out() {
    let p = parse_presentation(
        "algebra star\nvertices: 0 1 2 3\narrows: a: 0 -> 1, b: 0 -> 2, c: 0 -> 3\n",
    )
    .unwrap();
    let err = StringAlgebra::new(p).unwrap_err();
    assert!(err.to_string().contains("out-degree 3 > 2 at vertex 0"));
}

#[test]
fn nonzero_cycle_is_rejected() {
    let p = parse_presentation("algebra loop\nvertices: 0\narrows: a: 0 -> 0\n").unwrap();
    let err = StringAlgebra::new(p).unwrap_err();
    assert!(err.0.iter().any(|v| matches!(v, Violation::InfiniteDimensional { .. })));
}

#[test]
fn opposite_of_kron() {
    let op = alg("kron").opposite();
    for a in &op.presentation().arrows {
        assert_eq!((a.source, a.target), (1, 0), "{a:?}");
    }
}

#[test]
fn opposite_is_valid_and_involutive() {
    for (name, _) in PRESETS {
        let p = preset(name).unwrap();
        assert_eq!(p.opposite().opposite(), p, "{name}");
        let a = alg(name);
        assert_eq!(a.opposite().is_valid(), a.is_valid(), "{name}");
    }
}

#[test]
fn lam2_opposite_relations_reverse() {
    let p = preset("lam2").unwrap();
    let op = p.opposite();
    let rev: Vec<Vec<usize>> = p.relations.iter().map(|r| r.iter().rev().copied().collect()).collect();
    let mut a = op.relations.clone();
    let mut b = rev;
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn presets_round_trip() {
    for (name, src) in PRESETS {
        let p = parse_presentation(src).unwrap();
        let again = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, again, "{name}");
    }
    assert!(preset_source("LAM2.alg").is_some());
}

#[test]
fn kron_h_sides() {
    let a = alg("kron");
    let (al, be) = (a.presentation().arrow_id("a").unwrap(), a.presentation().arrow_id("b").unwrap());
    assert_eq!(a.side(Letter::direct(al)), Side::Plus);
    assert_eq!(a.side(Letter::direct(be)), Side::Minus);
}

#[test]
fn x3_h_partition() {
    let a = alg("x3");
    let (al, be) = (a.presentation().arrow_id("a").unwrap(), a.presentation().arrow_id("b").unwrap());
    assert_eq!(a.side(Letter::direct(al)), a.side(Letter::inverse(al)));
    assert_eq!(a.side(Letter::direct(be)), a.side(Letter::inverse(be)));
    assert_ne!(a.side(Letter::direct(al)), a.side(Letter::direct(be)));
}

#[test]
fn single_entering_letter_is_alone() {
    let a = alg("a2");
    let l = a.letters()[0];
    let s = a.side(l);
    assert_eq!(a.h_assignment().set(&a, a.left(l), s), vec![l]);
}

#[test]
fn h_sides_separate_conflicts() {
    // two letters on one side never both extend a string to the left
    for (name, _) in PRESETS {
        let a = alg(name);
        if !a.is_valid() {
            continue;
        }
        for v in 0..a.num_vertices() {
            for side in [Side::Plus, Side::Minus] {
                let set = a.h_assignment().set(&a, v, side);
                for &x in &set {
                    for &y in &set {
                        if x != y {
                            assert!(
                                a.append_violation(&[x.inv()], y).is_some(),
                                "{name}: {} and {} share a side",
                                a.letter_name(x),
                                a.letter_name(y)
                            );
                        }
                    }
                }
            }
        }
    }
}
