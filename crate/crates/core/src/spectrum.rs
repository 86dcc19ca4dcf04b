//! Points of the Ziegler spectrum, their Cantor–Bendixson ranks, duality and
//! basic neighbourhoods.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bands::{is_domestic, BandError, BandSet, ClassId, Domesticity, Witness};
use crate::bridge::{bridge_quiver, BridgeError, BridgeQuiver, IndentFilter};
use crate::presentation::StringAlgebra;
use crate::words::{
    image_occurrences, invert_letters, is_string, letters_text, parse_letters, parse_word,
    AnyWord, EndKind, InfiniteKind, InfiniteWord, Letter, Side, Window, Word, WordError,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("the algebra is not domestic")]
    NonDomestic,
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Band(#[from] BandError),
    #[error("malformed point expression: {0}")]
    Syntax(String),
    #[error("neighbourhood index must be at least 1")]
    BadIndex,
    #[error("expected a one-sided infinite word")]
    NotOneSided,
}

/// A domestic algebra with its bands and bridge quiver.
#[derive(Clone, Debug)]
pub struct Analysis {
    alg: StringAlgebra,
    bands: BandSet,
    quiver: BridgeQuiver,
}

impl Analysis {
    pub fn new(alg: StringAlgebra) -> Result<Analysis, SpectrumError> {
        let bands = match is_domestic(&alg) {
            Domesticity::Domestic(b) => b,
            Domesticity::NonDomestic(_) => return Err(SpectrumError::NonDomestic),
        };
        let quiver = bridge_quiver(&alg, &bands)?;
        Ok(Analysis { alg, bands, quiver })
    }

    pub fn alg(&self) -> &StringAlgebra {
        &self.alg
    }

    pub fn bands(&self) -> &BandSet {
        &self.bands
    }

    pub fn quiver(&self) -> &BridgeQuiver {
        &self.quiver
    }

    pub fn opposite(&self) -> Result<Analysis, SpectrumError> {
        Analysis::new(self.alg.opposite())
    }

    pub fn indent(&self, b: ClassId, filter: IndentFilter) -> Result<usize, SpectrumError> {
        Ok(self.quiver.indent(b, filter)?)
    }

    pub fn band_text(&self, b: ClassId) -> String {
        letters_text(&self.alg, self.bands.repr(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleKind {
    DirectSum,
    DirectProduct,
    Mixed,
}

/// An indecomposable pure-injective, named combinatorially. String points
/// are stored in a fixed orientation: one-sided words run to the right and
/// two-sided words (and finite words) are the lesser of `w` and `w⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectrumPoint {
    FiniteString(Word),
    FiniteBand { class: ClassId, label: String, size: usize },
    InfString(InfiniteWord),
    Prufer { class: ClassId, label: String },
    Adic { class: ClassId, label: String },
    Generic { class: ClassId },
}

fn orient_finite(alg: &StringAlgebra, w: Word) -> Word {
    if w.is_empty() {
        return Word::empty(w.start(), Side::Plus);
    }
    let i = w.inverse(alg);
    if i.letters() < w.letters() {
        i
    } else {
        w
    }
}

fn orient_infinite(w: InfiniteWord) -> InfiniteWord {
    match w.kind() {
        InfiniteKind::RightInfinite => w,
        InfiniteKind::LeftInfinite => w.inverse(),
        InfiniteKind::TwoSided => {
            let i = w.inverse();
            if i < w {
                i
            } else {
                w
            }
        }
    }
}

impl SpectrumPoint {
    /// The string point of `w`, in canonical orientation.
    pub fn string(alg: &StringAlgebra, w: AnyWord) -> SpectrumPoint {
        match w {
            AnyWord::Finite(w) => SpectrumPoint::FiniteString(orient_finite(alg, w)),
            AnyWord::Infinite(w) => SpectrumPoint::InfString(orient_infinite(w)),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpectrumPoint::FiniteString(_) => "finite-string",
            SpectrumPoint::FiniteBand { .. } => "finite-band",
            SpectrumPoint::InfString(_) => "infinite-string",
            SpectrumPoint::Prufer { .. } => "prufer",
            SpectrumPoint::Adic { .. } => "adic",
            SpectrumPoint::Generic { .. } => "generic",
        }
    }

    pub fn band_class(&self) -> Option<ClassId> {
        match self {
            SpectrumPoint::FiniteBand { class, .. }
            | SpectrumPoint::Prufer { class, .. }
            | SpectrumPoint::Adic { class, .. }
            | SpectrumPoint::Generic { class } => Some(*class),
            _ => None,
        }
    }

    /// Direct sum, direct product or mixed, for infinite strings.
    pub fn module_kind(&self) -> Option<ModuleKind> {
        let SpectrumPoint::InfString(w) = self else { return None };
        let (l, r) = w.classify_ends();
        let ends: Vec<EndKind> = [l, r].into_iter().flatten().collect();
        Some(if ends.iter().all(|&e| e == EndKind::Expanding) {
            ModuleKind::DirectProduct
        } else if ends.iter().all(|&e| e == EndKind::Contracting) {
            ModuleKind::DirectSum
        } else {
            ModuleKind::Mixed
        })
    }

    pub fn expr(&self, an: &Analysis) -> String {
        let alg = an.alg();
        match self {
            SpectrumPoint::FiniteString(w) => format!("string:[{}]", w.display(alg)),
            SpectrumPoint::InfString(w) => format!("string:[{}]", w.display(alg)),
            SpectrumPoint::FiniteBand { class, label, size } => {
                format!("band:[{}]@{label}#{size}", an.band_text(*class))
            }
            SpectrumPoint::Prufer { class, label } => {
                format!("prufer:[{}]@{label}", an.band_text(*class))
            }
            SpectrumPoint::Adic { class, label } => {
                format!("adic:[{}]@{label}", an.band_text(*class))
            }
            SpectrumPoint::Generic { class } => format!("generic:[{}]", an.band_text(*class)),
        }
    }
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || "_'.".contains(c))
}

/// Parses `string:[w]`, `band:[b]@λ#n`, `prufer:[b]@λ`, `adic:[b]@λ` or
/// `generic:[b]`.
pub fn parse_point(an: &Analysis, expr: &str) -> Result<SpectrumPoint, SpectrumError> {
    let syntax = |m: &str| SpectrumError::Syntax(m.to_string());
    let expr = expr.trim();
    let (kind, rest) = expr.split_once(':').ok_or_else(|| syntax("expected `<kind>:[...]`"))?;
    let rest = rest.trim_start();
    let inner_start = rest.strip_prefix('[').ok_or_else(|| syntax("expected `[` after the kind"))?;
    let close = inner_start.find(']').ok_or_else(|| syntax("missing `]`"))?;
    let inner = &inner_start[..close];
    let suffix = inner_start[close + 1..].trim();

    let band = |text: &str| -> Result<ClassId, SpectrumError> {
        let letters = parse_letters(an.alg(), text)?;
        Ok(an.bands().canonical_band(&letters)?.class)
    };
    let label = |s: &str| -> Result<String, SpectrumError> {
        let l = s.strip_prefix('@').ok_or_else(|| syntax("expected `@<label>`"))?;
        if is_label(l) {
            Ok(l.to_string())
        } else {
            Err(syntax("bad parameter label"))
        }
    };
    match kind.trim() {
        "string" => {
            if !suffix.is_empty() {
                return Err(syntax("unexpected text after `]`"));
            }
            Ok(SpectrumPoint::string(an.alg(), parse_word(an.alg(), inner)?))
        }
        "band" => {
            let class = band(inner)?;
            let (l, n) = suffix.split_once('#').ok_or_else(|| syntax("expected `#<size>`"))?;
            let size: usize = n.trim().parse().map_err(|_| syntax("bad size"))?;
            if size == 0 {
                return Err(syntax("band size must be at least 1"));
            }
            Ok(SpectrumPoint::FiniteBand { class, label: label(l.trim())?, size })
        }
        "prufer" => Ok(SpectrumPoint::Prufer { class: band(inner)?, label: label(suffix)? }),
        "adic" => Ok(SpectrumPoint::Adic { class: band(inner)?, label: label(suffix)? }),
        "generic" => {
            if !suffix.is_empty() {
                return Err(syntax("unexpected text after `]`"));
            }
            Ok(SpectrumPoint::Generic { class: band(inner)? })
        }
        other => Err(syntax(&format!("unknown point kind `{other}`"))),
    }
}

/// How a rank was obtained: the rule and the indents it used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub rule: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.rule)?;
        match (self.s, self.t) {
            (Some(s), Some(t)) => write!(f, ": s={s},t={t}"),
            (None, Some(t)) => write!(f, ": t={t}"),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub expr: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleKind>,
    pub rank: usize,
    pub trace: Trace,
}

fn tail_class(an: &Analysis, tail: &[Letter]) -> Result<ClassId, SpectrumError> {
    Ok(an.bands().class_of_cyclic(tail)?)
}

/// Cantor–Bendixson rank of a point.
///
/// Finite points are isolated. `c·b^∞` has rank `t + 1` and
/// `^∞b₀·c·b₁^∞` rank `s + t + 2`, with `s`, `t` the indents of `b₀⁻¹` and
/// `b₁`. Prüfer and adic points use the indents along ascending or
/// descending first bridges from `b` (`s`) and `b⁻¹` (`t`), plus one. The
/// generic of `b` has rank `indent(b⁻¹) + indent(b) + 2`.
pub fn cb_rank(an: &Analysis, pt: &SpectrumPoint) -> Result<RankReport, SpectrumError> {
    let (rank, trace) = match pt {
        SpectrumPoint::FiniteString(_) | SpectrumPoint::FiniteBand { .. } => {
            (0, Trace { rule: "finite", s: None, t: None })
        }
        SpectrumPoint::InfString(w) => match w.kind() {
            InfiniteKind::TwoSided => {
                let (s, t) = two_sided_indents(an, w)?;
                let (s2, t2) = two_sided_indents(an, &w.inverse())?;
                assert_eq!(s + t, s2 + t2, "rank depends on orientation");
                (s + t + 2, Trace { rule: "two-sided-string", s: Some(s), t: Some(t) })
            }
            _ => {
                let w = orient_infinite(w.clone());
                let t = an.indent(tail_class(an, w.right_tail().unwrap())?, IndentFilter::All)?;
                (t + 1, Trace { rule: "one-sided-string", s: None, t: Some(t) })
            }
        },
        SpectrumPoint::Prufer { class, .. } => {
            let s = an.indent(*class, IndentFilter::Ascending)?;
            let t = an.indent(an.bands().inverse(*class), IndentFilter::Ascending)?;
            (s + t + 1, Trace { rule: "prufer", s: Some(s), t: Some(t) })
        }
        SpectrumPoint::Adic { class, .. } => {
            let s = an.indent(*class, IndentFilter::Descending)?;
            let t = an.indent(an.bands().inverse(*class), IndentFilter::Descending)?;
            (s + t + 1, Trace { rule: "adic", s: Some(s), t: Some(t) })
        }
        SpectrumPoint::Generic { class } => {
            let s = an.indent(an.bands().inverse(*class), IndentFilter::All)?;
            let t = an.indent(*class, IndentFilter::All)?;
            (s + t + 2, Trace { rule: "generic", s: Some(s), t: Some(t) })
        }
    };
    Ok(RankReport {
        expr: pt.expr(an),
        kind: pt.kind(),
        module: pt.module_kind(),
        rank,
        trace,
    })
}

fn two_sided_indents(an: &Analysis, w: &InfiniteWord) -> Result<(usize, usize), SpectrumError> {
    let b0 = tail_class(an, w.left_tail().unwrap())?;
    let b1 = tail_class(an, w.right_tail().unwrap())?;
    let s = an.indent(an.bands().inverse(b0), IndentFilter::All)?;
    let t = an.indent(b1, IndentFilter::All)?;
    Ok((s, t))
}

/// Krull–Gabriel dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KgDimension {
    Finite(usize),
    Undefined,
}

impl fmt::Display for KgDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KgDimension::Finite(n) => write!(f, "{n}"),
            KgDimension::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for KgDimension {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            KgDimension::Finite(n) => s.serialize_u64(*n as u64),
            KgDimension::Undefined => s.serialize_str("undefined"),
        }
    }
}

/// Undefined when not domestic, 0 without bands, else longest path + 2.
pub fn kg_dimension(alg: &StringAlgebra) -> Result<KgDimension, SpectrumError> {
    match Analysis::new(alg.clone()) {
        Err(SpectrumError::NonDomestic) => Ok(KgDimension::Undefined),
        Err(e) => Err(e),
        Ok(an) => Ok(kg_of(&an)?),
    }
}

pub fn kg_of(an: &Analysis) -> Result<KgDimension, SpectrumError> {
    if an.bands().is_empty() {
        return Ok(KgDimension::Finite(0));
    }
    Ok(KgDimension::Finite(an.quiver().longest_path()? + 2))
}

/// m-dimension of a one-sided string, through its rank.
pub fn mdim_string(an: &Analysis, w: &AnyWord) -> Result<usize, SpectrumError> {
    match w {
        AnyWord::Finite(_) => Ok(0),
        AnyWord::Infinite(iw) if iw.kind() == InfiniteKind::TwoSided => Err(SpectrumError::NotOneSided),
        AnyWord::Infinite(iw) => {
            Ok(cb_rank(an, &SpectrumPoint::InfString(orient_infinite(iw.clone())))?.rank)
        }
    }
}

fn flip(l: Letter) -> Letter {
    l.inv()
}

fn flip_letters(ls: &[Letter]) -> Vec<Letter> {
    ls.iter().map(|&l| flip(l)).collect()
}

/// The elementary dual, as a point over the opposite algebra `op`.
///
/// Arrows keep their names and reverse, so a letter changes direction and
/// keeps its position. Prüfer and adic points swap; labels are carried over
/// unchanged.
pub fn dual_point(an: &Analysis, op: &Analysis, pt: &SpectrumPoint) -> Result<SpectrumPoint, SpectrumError> {
    let band = |c: ClassId| -> Result<ClassId, SpectrumError> {
        Ok(op.bands().canonical_band(&flip_letters(an.bands().repr(c)))?.class)
    };
    Ok(match pt {
        SpectrumPoint::FiniteString(w) => {
            let d = if w.is_empty() {
                Word::empty(w.start(), w.side())
            } else {
                Word::new(op.alg(), flip_letters(w.letters()))?
            };
            SpectrumPoint::string(op.alg(), AnyWord::Finite(d))
        }
        SpectrumPoint::InfString(w) => {
            SpectrumPoint::string(op.alg(), AnyWord::Infinite(w.map_letters(flip)))
        }
        SpectrumPoint::FiniteBand { class, label, size } => {
            SpectrumPoint::FiniteBand { class: band(*class)?, label: label.clone(), size: *size }
        }
        SpectrumPoint::Prufer { class, label } => {
            SpectrumPoint::Adic { class: band(*class)?, label: label.clone() }
        }
        SpectrumPoint::Adic { class, label } => {
            SpectrumPoint::Prufer { class: band(*class)?, label: label.clone() }
        }
        SpectrumPoint::Generic { class } => SpectrumPoint::Generic { class: band(*class)? },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    In,
    Out,
    /// The neighbourhood description says nothing about this candidate.
    NotCovered,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::In => "true",
            Membership::Out => "false",
            Membership::NotCovered => "not-covered",
        })
    }
}

fn yes(b: bool) -> Membership {
    if b {
        Membership::In
    } else {
        Membership::Out
    }
}

fn candidate_word(pt: &SpectrumPoint) -> Option<AnyWord> {
    match pt {
        SpectrumPoint::FiniteString(w) => Some(AnyWord::Finite(w.clone())),
        SpectrumPoint::InfString(w) => Some(AnyWord::Infinite(w.clone())),
        _ => None,
    }
}

/// Whether `d` sits in `^∞b^∞` with the given closure at both ends.
fn closed_in_periodic(d: &[Letter], b: &[Letter], image: bool) -> bool {
    let p = b.len();
    (0..p).any(|o| {
        let matches = d.iter().enumerate().all(|(k, &l)| l == b[(o + k) % p]);
        if !matches {
            return false;
        }
        let left = b[(o + p - 1) % p];
        let right = b[(o + d.len()) % p];
        if image {
            left.inverse && !right.inverse
        } else {
            !left.inverse && right.inverse
        }
    })
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// Some substring `d` of `y`, closed in `y` as `in_y` (image when true),
/// contains `core` and, up to inversion, is closed the other way in `^∞b^∞`.
fn periodic_substring_test(y: &AnyWord, b: &[Letter], core: &[Letter], in_y_image: bool) -> bool {
    let periods = 3 + core.len() + 2 * b.len();
    let win: Window = y.window(periods);
    let n = win.letters.len();
    for i in 0..=n {
        for j in i + core.len()..=n {
            if win.closed(i, j, in_y_image) != Some(true) {
                continue;
            }
            let d = &win.letters[i..j];
            for cand in [d.to_vec(), invert_letters(d)] {
                if contains(&cand, core) && closed_in_periodic(&cand, b, !in_y_image) {
                    return true;
                }
            }
        }
    }
    false
}

/// Least rotation of `b` that starts with an inverse and ends with a direct
/// letter.
fn inverse_first_rotation(b: &[Letter]) -> Vec<Letter> {
    (0..b.len())
        .map(|i| {
            let mut r = b[i..].to_vec();
            r.extend_from_slice(&b[..i]);
            r
        })
        .filter(|r| r[0].inverse && !r[r.len() - 1].inverse)
        .min()
        .expect("a band has a rotation of each shape")
}

/// Membership of `candidate` in the `n`-th basic open neighbourhood of
/// `center`. Finite band sizes are cut at `m ≥ n`.
pub fn in_basic_nbhd(
    an: &Analysis,
    center: &SpectrumPoint,
    n: usize,
    candidate: &SpectrumPoint,
) -> Result<Membership, SpectrumError> {
    if n < 1 {
        return Err(SpectrumError::BadIndex);
    }
    let alg = an.alg();
    let bands = an.bands();
    let y = candidate_word(candidate);
    let same_band = |class: ClassId, label: &str| -> Option<Membership> {
        // band candidates against a band center with class and label
        let (c, l) = match candidate {
            SpectrumPoint::FiniteBand { class, label, .. }
            | SpectrumPoint::Prufer { class, label }
            | SpectrumPoint::Adic { class, label } => (*class, label.as_str()),
            SpectrumPoint::Generic { class } => (*class, ""),
            _ => return None,
        };
        if c == class {
            Some(yes(l == label))
        } else if c == bands.inverse(class) {
            Some(Membership::NotCovered)
        } else {
            Some(Membership::Out)
        }
    };
    Ok(match center {
        SpectrumPoint::FiniteString(_) | SpectrumPoint::FiniteBand { .. } => Membership::NotCovered,
        SpectrumPoint::InfString(w) => {
            let Some(y) = y else {
                return Ok(match candidate {
                    SpectrumPoint::FiniteBand { .. } => Membership::Out,
                    _ => Membership::NotCovered,
                });
            };
            match w.kind() {
                InfiniteKind::TwoSided => {
                    let pattern = Word::from_valid(alg, aligned_pattern(an, w, n));
                    yes(!image_occurrences(alg, &pattern, &y).is_empty())
                }
                _ => {
                    let w = orient_infinite(w.clone());
                    let pattern = Word::from_valid(alg, aligned_pattern(an, &w, n));
                    yes(initial_image(alg, &pattern, &y))
                }
            }
        }
        SpectrumPoint::Prufer { class, label } => match candidate {
            SpectrumPoint::FiniteBand { size, .. } => match same_band(*class, label).unwrap() {
                Membership::In => yes(*size >= n),
                m => m,
            },
            SpectrumPoint::Prufer { .. } => same_band(*class, label).unwrap(),
            SpectrumPoint::Adic { .. } | SpectrumPoint::Generic { .. } => Membership::Out,
            _ => {
                let b = bands.repr(*class);
                let c = inverse_first_rotation(b).repeat(n);
                yes(periodic_substring_test(&y.unwrap(), b, &c, true))
            }
        },
        SpectrumPoint::Adic { class, label } => match candidate {
            SpectrumPoint::FiniteBand { size, .. } => match same_band(*class, label).unwrap() {
                Membership::In => yes(*size >= n),
                m => m,
            },
            SpectrumPoint::Adic { .. } => same_band(*class, label).unwrap(),
            SpectrumPoint::Prufer { .. } | SpectrumPoint::Generic { .. } => Membership::Out,
            _ => {
                let b = bands.repr(*class);
                let bn = b.repeat(n);
                yes(periodic_substring_test(&y.unwrap(), b, &bn, false))
            }
        },
        SpectrumPoint::Generic { class } => {
            let ours = |c: ClassId| c == *class || c == bands.inverse(*class);
            match candidate {
                SpectrumPoint::FiniteBand { class: c, size, .. } => yes(ours(*c) && *size >= n),
                SpectrumPoint::Prufer { class: c, .. }
                | SpectrumPoint::Adic { class: c, .. }
                | SpectrumPoint::Generic { class: c } => yes(ours(*c)),
                _ => {
                    let pattern = Word::from_valid(alg, bands.repr(*class).repeat(n));
                    yes(!image_occurrences(alg, &pattern, &y.unwrap()).is_empty())
                }
            }
        }
    })
}

/// `b₀ⁿ c bⁿ` (or `c bⁿ` for a one-sided word) cut from `w` so that both
/// band powers use the representatives, which start with a direct and end
/// with an inverse letter. The result is then an image substring of `w`.
fn aligned_pattern(an: &Analysis, w: &InfiniteWord, n: usize) -> Vec<Letter> {
    let bands = an.bands();
    let rep = |t: &[Letter]| bands.repr(bands.class_of_cyclic(t).expect("tails are bands")).to_vec();
    let pl = w.left_tail().map_or(0, <[Letter]>::len);
    let pr = w.right_tail().map_or(0, <[Letter]>::len);
    let periods = 2 * n + 4 + w.core().len();
    let win = w.materialise(periods);
    let letters = &win.letters;
    let (ell, q) = win.periodic_bounds(pl, pr);
    let r = rep(w.right_tail().unwrap());
    let q = q.unwrap();
    let mut j = (q..).find(|&j| letters[j..].starts_with(&r)).unwrap();
    let i = match (w.left_tail(), ell) {
        (Some(l), Some(ell)) => {
            let b0 = rep(l);
            let i = (b0.len()..=ell).rev().find(|&i| letters[..i].ends_with(&b0)).unwrap();
            while j < i {
                j += pr;
            }
            i - n * b0.len()
        }
        _ => 0,
    };
    letters[i..j + n * r.len()].to_vec()
}

/// `pattern` is an image substring at the finite end of a one-sided or
/// finite `y`, read in either direction.
fn initial_image(alg: &StringAlgebra, pattern: &Word, y: &AnyWord) -> bool {
    match y {
        AnyWord::Infinite(iw) if iw.kind() == InfiniteKind::TwoSided => false,
        AnyWord::Infinite(iw) => {
            let iw = orient_infinite(iw.clone());
            image_occurrences(alg, pattern, &AnyWord::Infinite(iw))
                .iter()
                .any(|o| o.start == 0 && !o.inverted)
        }
        AnyWord::Finite(w) => image_occurrences(alg, pattern, y).iter().any(|o| {
            (o.start == 0 && !o.inverted) || (o.inverted && o.start as usize + pattern.len() == w.len())
        }),
    }
}

/// Bounds for [`enumerate_points`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Longest finite string.
    pub max_len: usize,
    /// Largest finite band module size.
    pub max_power: usize,
    /// Longest core of an infinite string.
    pub max_prefix: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_len: 4, max_power: 2, max_prefix: 2 }
    }
}

/// All strings of length at most `max` (with the empty words).
pub fn strings_up_to(alg: &StringAlgebra, max: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in alg.letters() {
                if w.is_empty() || alg.append_violation(w, l).is_none() {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Points within `bounds`, each with its rank, in a fixed order: finite
/// strings, finite bands, infinite strings, Prüfer, adic and generic points.
/// Band points are listed once per inverse pair, with the symbolic label `l`.
pub fn enumerate_points(an: &Analysis, bounds: Bounds) -> Result<Vec<RankReport>, SpectrumError> {
    let alg = an.alg();
    let bands = an.bands();
    let mut points: Vec<SpectrumPoint> = Vec::new();

    let mut finite = BTreeSet::new();
    for v in 0..alg.num_vertices() {
        finite.insert(SpectrumPoint::FiniteString(Word::empty(v, Side::Plus)));
    }
    for w in strings_up_to(alg, bounds.max_len) {
        if !w.is_empty() {
            finite.insert(SpectrumPoint::string(alg, AnyWord::Finite(Word::from_valid(alg, w))));
        }
    }
    points.extend(finite);

    let primary: Vec<ClassId> =
        bands.classes().iter().filter(|c| c.is_primary()).map(|c| c.id).collect();
    for &c in &primary {
        for size in 1..=bounds.max_power {
            points.push(SpectrumPoint::FiniteBand { class: c, label: "l".into(), size });
        }
    }

    let mut infinite = BTreeSet::new();
    let cores = strings_up_to(alg, bounds.max_prefix);
    let rotations: Vec<Vec<Letter>> = bands.all_rotations().map(|(w, _)| w.clone()).collect();
    let mut rotations = rotations;
    rotations.sort();
    for core in &cores {
        for r in &rotations {
            if let Ok(w) = InfiniteWord::new(alg, None, core.clone(), Some(r.clone())) {
                infinite.insert(SpectrumPoint::string(alg, AnyWord::Infinite(w)));
            }
            for l in &rotations {
                let mut probe = l.repeat(2);
                probe.extend_from_slice(core);
                probe.extend(r.repeat(2));
                if is_string(alg, &probe).is_err() {
                    continue;
                }
                if let Ok(w) = InfiniteWord::new(alg, Some(l.clone()), core.clone(), Some(r.clone())) {
                    infinite.insert(SpectrumPoint::string(alg, AnyWord::Infinite(w)));
                }
            }
        }
    }
    points.extend(infinite);

    for &c in &primary {
        points.push(SpectrumPoint::Prufer { class: c, label: "l".into() });
    }
    for &c in &primary {
        points.push(SpectrumPoint::Adic { class: c, label: "l".into() });
    }
    for &c in &primary {
        points.push(SpectrumPoint::Generic { class: c });
    }
    points.iter().map(|p| cb_rank(an, p)).collect()
}

/// Non-domestic witness pair, when there is one.
pub fn witness(alg: &StringAlgebra) -> Option<Witness> {
    match is_domestic(alg) {
        Domesticity::NonDomestic(w) => Some(w),
        Domesticity::Domestic(_) => None,
    }
}
