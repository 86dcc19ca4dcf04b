mod common;

use std::cmp::Ordering;

use common::{alg, finite, word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stringz::sample::random_word;
use stringz::words::{
    compare_to_band_power, factor_occurrences, h_compare, image_occurrences, is_string,
    parse_letters, parse_word, AnyWord, BandComparison, EndKind, Occurrence, Rule, Side, Word,
    WordError,
};

#[test]
fn x1_string() {
    let a = alg("x1");
    assert!(is_string(&a, &parse_letters(&a, "a g a- b- a").unwrap()).is_ok());
}

#[test]
fn backtrack_is_not_a_string() {
    let a = alg("x1");
    let v = is_string(&a, &parse_letters(&a, "a g g- a-").unwrap()).unwrap_err();
    assert_eq!((v.position, v.rule), (2, Rule::Backtrack));
}

#[test]
fn lam2_relation_blocks() {
    let a = alg("lam2");
    let v = is_string(&a, &parse_letters(&a, "g b").unwrap()).unwrap_err();
    assert!(matches!(v.rule, Rule::Relation(ref r) if r == "g b"));
    // the inverse run is blocked too
    assert!(is_string(&a, &parse_letters(&a, "b- g-").unwrap()).is_err());
}

#[test]
fn parse_reports_the_offending_column() {
    let a = alg("lam2");
    match parse_word(&a, "e g b").unwrap_err() {
        WordError::NotString { column, rule } => {
            assert_eq!(column, 5);
            assert_eq!(rule, Rule::Relation("g b".into()));
        }
        e => panic!("{e}"),
    }
    assert!(matches!(parse_word(&a, "a q"), Err(WordError::UnknownArrow { column: 3, .. })));
}

#[test]
fn x1_inverse() {
    let a = alg("x1");
    let w = finite(&a, "a g a- b-");
    assert_eq!(w.inverse(&a).display(&a), "b a g- a-");
}

#[test]
fn empty_word_inverse_flips_side() {
    let a = alg("kron");
    let w = finite(&a, "1@1");
    assert_eq!(w.side(), Side::Plus);
    let i = w.inverse(&a);
    assert_eq!((i.start(), i.side()), (w.start(), Side::Minus));
    assert_eq!(i.display(&a), "1@1-");
}

#[test]
fn powers_expand() {
    let a = alg("kron");
    assert_eq!(finite(&a, "(a b-)^2 a").display(&a), "a b- a b- a");
}

#[test]
fn infinite_words_display_and_parse_back() {
    let a = alg("lam2");
    for text in ["(e d-)^inf", "e d- e g (a b-)^inf", "inf^(e d-) e g (a b-)^inf", "inf^(b a-) g-"] {
        let w = word(&a, text);
        assert_eq!(word(&a, &w.display(&a)), w, "{text}");
    }
}

#[test]
fn completely_periodic_is_rejected() {
    let a = alg("kron");
    assert_eq!(parse_word(&a, "inf^(a b-) (a b-)^inf").unwrap_err(), WordError::CompletelyPeriodic);
}

#[test]
fn occurrences_in_x1_host() {
    let a = alg("x1");
    let host = word(&a, "a g a- b- a");
    let alpha = finite(&a, "a");
    let alpha_inv = finite(&a, "a-");
    assert!(!image_occurrences(&a, &alpha, &host).is_empty());
    assert!(!factor_occurrences(&a, &alpha_inv, &host).is_empty());
    assert!(factor_occurrences(&a, &alpha, &host).iter().all(|o| o.inverted));
}

#[test]
fn occurrences_in_shorter_x1_host() {
    // with host a g a- b-: a is an image, a- is not; a- is a factor, a is not
    let a = alg("x1");
    let host = word(&a, "a g a- b-");
    let forward = |v: Vec<Occurrence>| v.into_iter().filter(|o| !o.inverted).count();
    assert_eq!(forward(image_occurrences(&a, &finite(&a, "a"), &host)), 1);
    assert_eq!(forward(image_occurrences(&a, &finite(&a, "a-"), &host)), 0);
    assert_eq!(forward(factor_occurrences(&a, &finite(&a, "a-"), &host)), 1);
    assert_eq!(forward(factor_occurrences(&a, &finite(&a, "a"), &host)), 0);
}

#[test]
fn pattern_equal_to_host() {
    let a = alg("x1");
    let w = finite(&a, "a g a- b-");
    let occ = image_occurrences(&a, &w, &AnyWord::Finite(w.clone()));
    assert_eq!(occ, vec![Occurrence { start: 0, inverted: false }]);
    let k = alg("kron");
    let sym = finite(&k, "a b- a");
    // a b- a is not its own inverse: a- b a- differs
    assert_eq!(image_occurrences(&k, &sym, &AnyWord::Finite(sym.clone())).len(), 1);
}

#[test]
fn initial_pattern_in_infinite_host() {
    let a = alg("lam2");
    let host = word(&a, "e d- e g (a b-)^inf");
    let occ = image_occurrences(&a, &finite(&a, "e d-"), &host);
    assert!(occ.contains(&Occurrence { start: 0, inverted: false }), "{occ:?}");
}

#[test]
fn periodic_occurrences_are_reported_once_per_period() {
    let a = alg("kron");
    let host = word(&a, "(a b-)^inf");
    // a is followed by b-, which points away
    assert!(image_occurrences(&a, &finite(&a, "a"), &host).is_empty());
    // the boundary copy and one interior class per period
    let occ = image_occurrences(&a, &finite(&a, "a b-"), &host);
    assert_eq!(
        occ,
        vec![Occurrence { start: 0, inverted: false }, Occurrence { start: 2, inverted: false }]
    );
    // b- a recurs every period; all copies fold onto the first
    let occ = factor_occurrences(&a, &finite(&a, "b- a"), &host);
    assert_eq!(occ, vec![Occurrence { start: 1, inverted: false }]);
}

#[test]
fn kron_h_chain() {
    let a = alg("kron");
    let chain = ["1@2", "a b-", "a b- a b-", "a b- a b- a", "a b- a", "a"];
    let ws: Vec<Word> = chain.iter().map(|t| finite(&a, t)).collect();
    for pair in ws.windows(2) {
        assert_eq!(h_compare(&pair[0], &pair[1]).unwrap(), Ordering::Less, "{:?}", pair);
    }
}

#[test]
fn x3_h_chain() {
    let a = alg("x3");
    let ws: Vec<Word> = ["b (a- b)^2", "b a- b", "b"].iter().map(|t| finite(&a, t)).collect();
    for pair in ws.windows(2) {
        assert_eq!(h_compare(&pair[0], &pair[1]).unwrap(), Ordering::Less);
    }
    assert_eq!(h_compare(&ws[0], &ws[0]).unwrap(), Ordering::Equal);
}

#[test]
fn h_compare_needs_a_common_set() {
    let a = alg("kron");
    assert_eq!(h_compare(&finite(&a, "a"), &finite(&a, "b")), Err(WordError::NotComparable));
}

#[test]
fn band_power_comparisons() {
    let a = alg("x3");
    let b = parse_letters(&a, "b a-").unwrap();
    let up = parse_letters(&a, "b a- b a").unwrap();
    assert_eq!(compare_to_band_power(&up, &b).unwrap(), BandComparison::Ascends);
    let bb = parse_letters(&a, "b a- b a-").unwrap();
    assert_eq!(compare_to_band_power(&bb, &b).unwrap(), BandComparison::PeriodicPrefix);

    let l = alg("lam2");
    let b = parse_letters(&l, "b a-").unwrap();
    let down = parse_letters(&l, "b a- g- e- d e-").unwrap();
    assert_eq!(compare_to_band_power(&down, &b).unwrap(), BandComparison::Descends);
}

fn ends(a: &stringz::StringAlgebra, text: &str) -> (Option<EndKind>, Option<EndKind>) {
    match word(a, text) {
        AnyWord::Infinite(w) => w.classify_ends(),
        AnyWord::Finite(_) => panic!("finite"),
    }
}

#[test]
fn x3_expanding_and_mixed() {
    let a = alg("x3");
    assert_eq!(ends(&a, "b (a b-)^inf"), (None, Some(EndKind::Expanding)));
    assert_eq!(
        ends(&a, "inf^(b a-) b (a b-)^inf"),
        (Some(EndKind::Contracting), Some(EndKind::Expanding))
    );
}

#[test]
fn lam2_periodic_ends_expand() {
    let a = alg("lam2");
    assert_eq!(ends(&a, "(e d-)^inf").1, Some(EndKind::Expanding));
    assert_eq!(ends(&a, "(a b-)^inf").1, Some(EndKind::Expanding));
    assert_eq!(ends(&a, "(d- e)^inf").1, Some(EndKind::Contracting));
}

#[test]
fn inversion_swaps_end_labels() {
    let a = alg("x3");
    let AnyWord::Infinite(w) = word(&a, "inf^(b a-) b (a b-)^inf") else { panic!() };
    let (l, r) = w.classify_ends();
    assert_eq!(w.inverse().classify_ends(), (r, l));
}

const PRESETS: [&str; 6] = ["kron", "x1", "x3", "lam2", "lam3", "x4"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inversion_is_an_involution(seed: u64, p in 0..PRESETS.len()) {
        let a = alg(PRESETS[p]);
        let w = random_word(&a, &mut ChaCha8Rng::seed_from_u64(seed), 10);
        prop_assert_eq!(w.inverse(&a).inverse(&a), w);
    }

    #[test]
    fn display_round_trips(seed: u64, p in 0..PRESETS.len()) {
        let a = alg(PRESETS[p]);
        let w = random_word(&a, &mut ChaCha8Rng::seed_from_u64(seed), 10);
        prop_assert_eq!(word(&a, &w.display(&a)), AnyWord::Finite(w));
    }

    #[test]
    fn h_compare_is_a_total_order(seeds: [u64; 3], p in 0..PRESETS.len()) {
        let a = alg(PRESETS[p]);
        // three words in one H-set: force a shared first letter or emptiness
        let mut rng = ChaCha8Rng::seed_from_u64(seeds[0]);
        let base = random_word(&a, &mut rng, 6);
        let (v, s) = (base.start(), base.side());
        let pick = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50).map(|_| random_word(&a, &mut rng, 6)).find(|w| w.start() == v && w.side() == s)
        };
        let (Some(x), Some(y)) = (pick(seeds[1]), pick(seeds[2])) else { return Ok(()) };
        let z = base;
        let xy = h_compare(&x, &y).unwrap();
        prop_assert_eq!(h_compare(&y, &x).unwrap(), xy.reverse());
        prop_assert_eq!(xy == Ordering::Equal, x == y);
        let yz = h_compare(&y, &z).unwrap();
        if xy != Ordering::Greater && yz != Ordering::Greater {
            prop_assert_ne!(h_compare(&x, &z).unwrap(), Ordering::Greater);
        }
    }
}
