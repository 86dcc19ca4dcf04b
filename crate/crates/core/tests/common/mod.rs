#![allow(dead_code)]

use stringz::bands::ClassId;
use stringz::presets::preset_algebra;
use stringz::spectrum::{parse_point, Analysis, SpectrumPoint};
use stringz::words::{parse_letters, parse_word, AnyWord, Word};
use stringz::StringAlgebra;

pub fn alg(name: &str) -> StringAlgebra {
    preset_algebra(name).unwrap_or_else(|| panic!("no preset {name}"))
}

pub fn analysis(name: &str) -> Analysis {
    Analysis::new(alg(name)).unwrap()
}

pub fn word(alg: &StringAlgebra, text: &str) -> AnyWord {
    parse_word(alg, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn finite(alg: &StringAlgebra, text: &str) -> Word {
    match word(alg, text) {
        AnyWord::Finite(w) => w,
        AnyWord::Infinite(_) => panic!("{text} is infinite"),
    }
}

pub fn class(an: &Analysis, text: &str) -> ClassId {
    let ls = parse_letters(an.alg(), text).unwrap();
    an.bands().canonical_band(&ls).unwrap().class
}

pub fn point(an: &Analysis, expr: &str) -> SpectrumPoint {
    parse_point(an, expr).unwrap_or_else(|e| panic!("{expr}: {e}"))
}
