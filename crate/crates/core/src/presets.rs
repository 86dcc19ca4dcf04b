//! The bundled example algebras.

use crate::presentation::{parse_presentation, Presentation};

/// `(file stem, source)` for every bundled preset, sorted by name.
pub const PRESETS: &[(&str, &str)] = &[
    ("a2", include_str!("../presets/a2.alg")),
    ("gp23", include_str!("../presets/gp23.alg")),
    ("kron", include_str!("../presets/kron.alg")),
    ("lam2", include_str!("../presets/lam2.alg")),
    ("lam3", include_str!("../presets/lam3.alg")),
    ("x1", include_str!("../presets/x1.alg")),
    ("x3", include_str!("../presets/x3.alg")),
    ("x4", include_str!("../presets/x4.alg")),
    ("x5", include_str!("../presets/x5.alg")),
];

pub fn preset_source(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".alg").unwrap_or(name).to_ascii_lowercase();
    PRESETS.iter().find(|(n, _)| *n == stem).map(|(_, s)| *s)
}

/// Parsed presentation of a preset. Presets are known to parse.
pub fn preset(name: &str) -> Option<Presentation> {
    preset_source(name).map(|s| parse_presentation(s).expect("bundled preset parses"))
}

/// A preset as an algebra. Presets keep their relations as published,
/// so one that fails an axiom is still returned (see
/// [`StringAlgebra::violations`]).
pub fn preset_algebra(name: &str) -> Option<crate::StringAlgebra> {
    preset(name).map(crate::StringAlgebra::new_unchecked)
}
