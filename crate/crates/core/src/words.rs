//! Letters, finite and eventually periodic words, string validity,
//! substring occurrences and the H-order.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{ArrowId, StringAlgebra, VertexId};

/// An arrow or the formal inverse of an arrow. Ordered by arrow, direct first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Letter {
        Letter { arrow, inverse: false }
    }

    pub fn inverse(arrow: ArrowId) -> Letter {
        Letter { arrow, inverse: true }
    }

    pub fn inv(self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    pub fn is_direct(self) -> bool {
        !self.inverse
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+1",
            Side::Minus => "-1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    NotComposable,
    Backtrack,
    Relation(String),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::NotComposable => f.write_str("letters not composable"),
            Rule::Backtrack => f.write_str("immediate backtrack"),
            Rule::Relation(r) => write!(f, "contains relation `{r}`"),
        }
    }
}

/// The first failure in a letter sequence; `position` is the 0-based index
/// of the letter that completes the violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringViolation {
    pub position: usize,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: unknown arrow `{name}`")]
    UnknownArrow { column: usize, name: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("column {column}: not a string ({rule})")]
    NotString { column: usize, rule: Rule },
    #[error("tail is not a band rotation: {0}")]
    NotBand(String),
    #[error("completely periodic two-sided words are not points")]
    CompletelyPeriodic,
    #[error("words are not comparable: they lie in different H-sets")]
    NotComparable,
    #[error("word does not begin with the band")]
    NotBandPrefix,
    #[error("letters of the same direction cannot diverge here")]
    Incomparable,
    #[error("expected a finite word")]
    ExpectedFinite,
    #[error("expected an infinite word")]
    ExpectedInfinite,
}

/// First violation of the string rules, if any.
pub fn is_string(alg: &StringAlgebra, letters: &[Letter]) -> Result<(), StringViolation> {
    for i in 1..letters.len() {
        if let Some(rule) = alg.append_violation(&letters[..i], letters[i]) {
            return Err(StringViolation { position: i, rule });
        }
    }
    Ok(())
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

/// A finite string. Empty words carry a basepoint vertex and side; nonempty
/// words record the start vertex and the side of their first letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    start: VertexId,
    side: Side,
}

impl Word {
    pub fn empty(vertex: VertexId, side: Side) -> Word {
        Word { letters: Vec::new(), start: vertex, side }
    }

    /// Validates a nonempty letter sequence.
    pub fn new(alg: &StringAlgebra, letters: Vec<Letter>) -> Result<Word, WordError> {
        if letters.is_empty() {
            return Err(WordError::Syntax {
                column: 1,
                message: "empty word needs a basepoint, write `1@<vertex>`".into(),
            });
        }
        if let Err(v) = is_string(alg, &letters) {
            return Err(WordError::NotString { column: v.position + 1, rule: v.rule });
        }
        Ok(Word::from_valid(alg, letters))
    }

    /// Wraps a sequence already known to be a nonempty string.
    pub fn from_valid(alg: &StringAlgebra, letters: Vec<Letter>) -> Word {
        debug_assert!(is_string(alg, &letters).is_ok());
        let first = letters[0];
        Word { start: alg.left(first), side: alg.side(first), letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn end(&self, alg: &StringAlgebra) -> VertexId {
        self.letters.last().map_or(self.start, |&l| alg.right(l))
    }

    /// The vertex trace `v0 .. vk`.
    pub fn vertices(&self, alg: &StringAlgebra) -> Vec<VertexId> {
        std::iter::once(self.start).chain(self.letters.iter().map(|&l| alg.right(l))).collect()
    }

    pub fn inverse(&self, alg: &StringAlgebra) -> Word {
        if self.letters.is_empty() {
            return Word::empty(self.start, self.side.flip());
        }
        Word::from_valid(alg, invert_letters(&self.letters))
    }

    pub fn display(&self, alg: &StringAlgebra) -> String {
        if self.letters.is_empty() {
            let v = alg.vertex_name(self.start);
            return match self.side {
                Side::Plus => format!("1@{v}"),
                Side::Minus => format!("1@{v}-"),
            };
        }
        letters_text(alg, &self.letters)
    }
}

pub fn letters_text(alg: &StringAlgebra, letters: &[Letter]) -> String {
    letters.iter().map(|&l| alg.letter_name(l)).collect::<Vec<_>>().join(" ")
}

/// Smallest `r` with `letters = u^(n/r)` for `u` of length `r`.
pub fn primitive_root_len(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .find(|&r| n.is_multiple_of(r) && (r..n).all(|i| letters[i] == letters[i - r]))
        .unwrap_or(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfiniteKind {
    RightInfinite,
    LeftInfinite,
    TwoSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndKind {
    Expanding,
    Contracting,
}

/// `^∞L · core · R^∞` with at least one tail present.
///
/// Stored normalised: tails are primitive, the right periodic region is
/// maximal (it may eat into the left tail when the core is empty) and the
/// left tail then absorbs whatever core prefix it can.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfiniteWord {
    left: Option<Vec<Letter>>,
    core: Vec<Letter>,
    right: Option<Vec<Letter>>,
}

impl InfiniteWord {
    pub fn new(
        alg: &StringAlgebra,
        left: Option<Vec<Letter>>,
        core: Vec<Letter>,
        right: Option<Vec<Letter>>,
    ) -> Result<InfiniteWord, WordError> {
        if left.is_none() && right.is_none() {
            return Err(WordError::ExpectedInfinite);
        }
        let root = |t: Vec<Letter>| -> Result<Vec<Letter>, WordError> {
            if t.is_empty() {
                return Err(WordError::Syntax { column: 1, message: "empty tail".into() });
            }
            let r = primitive_root_len(&t);
            Ok(t[..r].to_vec())
        };
        let left = left.map(root).transpose()?;
        let right = right.map(root).transpose()?;
        let w = InfiniteWord { left, core, right };
        w.check_tails(alg)?;
        let probe = w.materialise(w.reps(alg));
        if let Err(v) = is_string(alg, &probe.letters) {
            return Err(WordError::NotString { column: 0, rule: v.rule });
        }
        w.normalised()
    }

    fn check_tails(&self, alg: &StringAlgebra) -> Result<(), WordError> {
        for t in [&self.left, &self.right].into_iter().flatten() {
            let reps = 2 + (alg.max_relation_len() + 1).div_ceil(t.len());
            let powered: Vec<Letter> = t.iter().copied().cycle().take(t.len() * reps).collect();
            let mixed = t.iter().any(|l| l.inverse) && t.iter().any(|l| !l.inverse);
            if is_string(alg, &powered).is_err() || !mixed {
                return Err(WordError::NotBand(letters_text(alg, t)));
            }
        }
        Ok(())
    }

    fn reps(&self, alg: &StringAlgebra) -> usize {
        let min_period = [&self.left, &self.right].into_iter().flatten().map(Vec::len).min().unwrap();
        3 + (alg.max_relation_len() + self.core.len() + 1).div_ceil(min_period)
    }

    fn normalised(mut self) -> Result<InfiniteWord, WordError> {
        if let Some(r) = self.right.as_mut() {
            while self.core.last() == r.last() && !self.core.is_empty() {
                self.core.pop();
                r.rotate_right(1);
            }
            if self.core.is_empty() {
                if let Some(l) = self.left.as_mut() {
                    let mut steps = 0;
                    while l.last() == r.last() {
                        if steps > l.len() + r.len() {
                            return Err(WordError::CompletelyPeriodic);
                        }
                        l.rotate_right(1);
                        r.rotate_right(1);
                        steps += 1;
                    }
                }
            }
        }
        if let Some(l) = self.left.as_mut() {
            while !self.core.is_empty() && self.core.first() == l.first() {
                self.core.remove(0);
                l.rotate_left(1);
            }
        }
        Ok(self)
    }

    pub fn kind(&self) -> InfiniteKind {
        match (&self.left, &self.right) {
            (Some(_), Some(_)) => InfiniteKind::TwoSided,
            (None, Some(_)) => InfiniteKind::RightInfinite,
            _ => InfiniteKind::LeftInfinite,
        }
    }

    pub fn left_tail(&self) -> Option<&[Letter]> {
        self.left.as_deref()
    }

    pub fn right_tail(&self) -> Option<&[Letter]> {
        self.right.as_deref()
    }

    pub fn core(&self) -> &[Letter] {
        &self.core
    }

    pub fn inverse(&self) -> InfiniteWord {
        InfiniteWord {
            left: self.right.as_deref().map(invert_letters),
            core: invert_letters(&self.core),
            right: self.left.as_deref().map(invert_letters),
        }
        .normalised()
        .expect("inverse of a valid word is valid")
    }

    /// Replaces every letter by `f(letter)` keeping positions, then
    /// renormalises. Used to transport words between an algebra and its
    /// opposite.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> InfiniteWord {
        let m = |v: &[Letter]| v.iter().map(|&l| f(l)).collect::<Vec<_>>();
        InfiniteWord {
            left: self.left.as_deref().map(m),
            core: m(&self.core),
            right: self.right.as_deref().map(m),
        }
        .normalised()
        .expect("letter maps preserve aperiodicity")
    }

    /// Expanding iff the last letter of the right period, aligned to the
    /// maximal periodic region, is inverse. When a junction letter precedes
    /// the region it is then direct; the two descriptions agree because
    /// three arrows cannot meet at a vertex.
    pub fn right_end(&self) -> Option<EndKind> {
        let r = self.right.as_ref()?;
        Some(if r.last().unwrap().inverse { EndKind::Expanding } else { EndKind::Contracting })
    }

    pub fn left_end(&self) -> Option<EndKind> {
        self.left.as_ref()?;
        self.inverse().right_end()
    }

    /// `(left, right)` end classification.
    pub fn classify_ends(&self) -> (Option<EndKind>, Option<EndKind>) {
        (self.left_end(), self.right_end())
    }

    /// `periods` copies of each tail around the core.
    pub fn materialise(&self, periods: usize) -> Window {
        let mut letters = Vec::new();
        let mut core_start = 0;
        if let Some(l) = &self.left {
            for _ in 0..periods {
                letters.extend_from_slice(l);
            }
            core_start = letters.len();
        }
        letters.extend_from_slice(&self.core);
        if let Some(r) = &self.right {
            for _ in 0..periods {
                letters.extend_from_slice(r);
            }
        }
        Window {
            letters,
            core_start,
            left_open: self.left.is_some(),
            right_open: self.right.is_some(),
            start: None,
        }
    }

    pub fn display(&self, alg: &StringAlgebra) -> String {
        let mut parts = Vec::new();
        if let Some(l) = &self.left {
            parts.push(format!("inf^({})", letters_text(alg, l)));
        }
        if !self.core.is_empty() {
            parts.push(letters_text(alg, &self.core));
        }
        if let Some(r) = &self.right {
            parts.push(format!("({})^inf", letters_text(alg, r)));
        }
        parts.join(" ")
    }
}

/// A finite stretch of a word. Letter `i` sits between vertex positions
/// `i` and `i + 1`; an open edge continues beyond the window.
#[derive(Clone, Debug)]
pub struct Window {
    pub letters: Vec<Letter>,
    pub core_start: usize,
    pub left_open: bool,
    pub right_open: bool,
    /// Basepoint vertex, needed only when `letters` is empty.
    pub start: Option<VertexId>,
}

impl Window {
    pub fn vertex(&self, alg: &StringAlgebra, pos: usize) -> VertexId {
        if pos == 0 {
            self.letters.first().map_or_else(|| self.start.unwrap(), |&l| alg.left(l))
        } else {
            alg.right(self.letters[pos - 1])
        }
    }

    /// Ends of the maximal periodic regions: `letters[..ell]` has period
    /// `pl` (with a left tail) and `letters[q..]` has period `pr` (with a
    /// right tail).
    pub fn periodic_bounds(&self, pl: usize, pr: usize) -> (Option<usize>, Option<usize>) {
        let w = &self.letters;
        let n = w.len();
        let q = self.right_open.then(|| {
            let mut q = n - pr;
            while q > 0 && w[q - 1] == w[q - 1 + pr] {
                q -= 1;
            }
            q
        });
        let ell = self.left_open.then(|| {
            let mut e = pl;
            while e < n && w[e] == w[e - pl] {
                e += 1;
            }
            e
        });
        (ell, q)
    }

    /// Whether `letters[i..j]` is closed as an image (neighbours point in)
    /// or as a factor (neighbours point out). `None` when it touches an
    /// open edge.
    pub fn closed(&self, i: usize, j: usize, image: bool) -> Option<bool> {
        let n = self.letters.len();
        if (i == 0 && self.left_open) || (j == n && self.right_open) {
            return None;
        }
        let left = (i > 0).then(|| self.letters[i - 1]);
        let right = (j < n).then(|| self.letters[j]);
        Some(if image {
            left.is_none_or(|l| l.inverse) && right.is_none_or(|r| !r.inverse)
        } else {
            left.is_none_or(|l| !l.inverse) && right.is_none_or(|r| r.inverse)
        })
    }
}

/// A finite or eventually periodic word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyWord {
    Finite(Word),
    Infinite(InfiniteWord),
}

impl AnyWord {
    pub fn display(&self, alg: &StringAlgebra) -> String {
        match self {
            AnyWord::Finite(w) => w.display(alg),
            AnyWord::Infinite(w) => w.display(alg),
        }
    }

    pub fn inverse(&self, alg: &StringAlgebra) -> AnyWord {
        match self {
            AnyWord::Finite(w) => AnyWord::Finite(w.inverse(alg)),
            AnyWord::Infinite(w) => AnyWord::Infinite(w.inverse()),
        }
    }

    /// The word cut down to a window with `periods` copies of each tail.
    pub fn window(&self, periods: usize) -> Window {
        match self {
            AnyWord::Finite(w) => Window {
                letters: w.letters.clone(),
                core_start: 0,
                left_open: false,
                right_open: false,
                start: Some(w.start),
            },
            AnyWord::Infinite(w) => w.materialise(periods),
        }
    }

    fn periods(&self) -> (usize, usize) {
        match self {
            AnyWord::Finite(_) => (0, 0),
            AnyWord::Infinite(w) => (
                w.left.as_ref().map_or(0, Vec::len),
                w.right.as_ref().map_or(0, Vec::len),
            ),
        }
    }
}

/// A substring occurrence. `start` is the vertex position where the match
/// begins, counted from the start of the core (negative inside a left tail).
/// `inverted` means the host carries the inverse of the pattern there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Occurrence {
    pub start: isize,
    pub inverted: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Closure {
    Image,
    Factor,
}

fn occurrences(alg: &StringAlgebra, pattern: &Word, host: &AnyWord, mode: Closure) -> Vec<Occurrence> {
    let (pl, pr) = host.periods();
    let span = pattern.len() + 2;
    let periods = 2 + span.div_ceil(pl.max(1)).max(span.div_ceil(pr.max(1)));
    let win = host.window(periods);
    let n = win.letters.len();
    let w = &win.letters;

    let (ell, q) = win.periodic_bounds(pl, pr);

    let forward = pattern.letters().to_vec();
    let backward = invert_letters(&forward);
    let mut found = std::collections::BTreeSet::new();
    let k = forward.len();
    for i in 0..=n.saturating_sub(k) {
        if k > n {
            break;
        }
        let j = i + k;
        let mut orientations = Vec::new();
        if k == 0 {
            if win.vertex(alg, i) == pattern.start() {
                orientations.push(false);
            }
        } else {
            if w[i..j] == forward[..] {
                orientations.push(false);
            }
            if w[i..j] == backward[..] {
                orientations.push(true);
            }
        }
        if orientations.is_empty() {
            continue;
        }
        if win.closed(i, j, mode == Closure::Image) != Some(true) {
            continue;
        }
        // canonical representative modulo the tail periods
        let mut s = i;
        if let Some(q) = q {
            if s > q {
                s = q + 1 + (s - q - 1) % pr;
            }
        }
        if let Some(ell) = ell {
            if j < ell && q.is_none_or(|q| i <= q) {
                let lo = ell - pl;
                let e = if j >= lo { j } else { j + (lo - j).div_ceil(pl) * pl };
                s = e - k;
            }
        }
        for inv in orientations {
            found.insert(Occurrence { start: s as isize - win.core_start as isize, inverted: inv });
        }
    }
    found.into_iter().collect()
}

/// Occurrences whose neighbouring host letters, where present, point toward
/// the occurrence: inverse on the left, direct on the right.
pub fn image_occurrences(alg: &StringAlgebra, pattern: &Word, host: &AnyWord) -> Vec<Occurrence> {
    occurrences(alg, pattern, host, Closure::Image)
}

/// Occurrences whose neighbouring host letters point away from it.
pub fn factor_occurrences(alg: &StringAlgebra, pattern: &Word, host: &AnyWord) -> Vec<Occurrence> {
    occurrences(alg, pattern, host, Closure::Factor)
}

fn next_key(l: Option<&Letter>) -> i8 {
    match l {
        None => 0,
        Some(l) if l.inverse => -1,
        Some(_) => 1,
    }
}

/// Total order on one H-set: at the first difference an inverse letter
/// sorts below the end of the word, which sorts below a direct letter.
pub fn h_compare(c: &Word, d: &Word) -> Result<Ordering, WordError> {
    if c.start != d.start || c.side != d.side {
        return Err(WordError::NotComparable);
    }
    let k = c.letters.iter().zip(&d.letters).take_while(|(a, b)| a == b).count();
    let (x, y) = (c.letters.get(k), d.letters.get(k));
    let (kx, ky) = (next_key(x), next_key(y));
    if x.is_some() && y.is_some() && kx == ky {
        return Err(WordError::NotComparable);
    }
    Ok(kx.cmp(&ky))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandComparison {
    /// `b^∞ < x`
    Ascends,
    /// `x < b^∞`
    Descends,
    /// `x` is a prefix of `b^∞`
    PeriodicPrefix,
}

/// Compares `x` with `b^∞` at their first divergence.
pub fn compare_to_band_power(x: &[Letter], b: &[Letter]) -> Result<BandComparison, WordError> {
    if b.is_empty() || x.len() < b.len() || x[..b.len()] != b[..] {
        return Err(WordError::NotBandPrefix);
    }
    for (i, &l) in x.iter().enumerate() {
        let m = b[i % b.len()];
        if l != m {
            return match (l.inverse, m.inverse) {
                (true, false) => Ok(BandComparison::Descends),
                (false, true) => Ok(BandComparison::Ascends),
                _ => Err(WordError::Incomparable),
            };
        }
    }
    Ok(BandComparison::PeriodicPrefix)
}

#[derive(Debug)]
enum Tok {
    Open(usize),
    Close(usize),
    Caret(usize),
    Name(usize, String),
}

fn lex(text: &str) -> Result<Vec<Tok>, WordError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' => {
                out.push(Tok::Open(col));
                i += 1;
            }
            ')' => {
                out.push(Tok::Close(col));
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret(col));
                i += 1;
            }
            _ if c.is_alphanumeric() || c == '_' || c == '\'' => {
                let s = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || "_'@".contains(chars[i]))
                {
                    i += 1;
                }
                while i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                out.push(Tok::Name(col, chars[s..i].iter().collect()));
            }
            _ => {
                return Err(WordError::Syntax { column: col, message: format!("unexpected `{c}`") })
            }
        }
    }
    Ok(out)
}

/// Letters with the column each came from.
type Located = Vec<(Letter, usize)>;

enum Piece {
    Letters(Located),
    LeftTail(Located),
    RightTail(Located),
    Empty(VertexId, Side, usize),
}

struct WordParser<'a> {
    alg: &'a StringAlgebra,
    toks: Vec<Tok>,
    pos: usize,
}

impl WordParser<'_> {
    fn col(&self) -> usize {
        match self.toks.get(self.pos) {
            Some(Tok::Open(c) | Tok::Close(c) | Tok::Caret(c) | Tok::Name(c, _)) => *c,
            None => 0,
        }
    }

    fn err(&self, message: &str) -> WordError {
        WordError::Syntax { column: self.col(), message: message.to_string() }
    }

    fn letter(&self, col: usize, name: &str) -> Result<Letter, WordError> {
        let (base, inverse) = match name.strip_suffix('-') {
            Some(b) => (b, true),
            None => (name, false),
        };
        let arrow = self.alg.presentation().arrow_id(base).ok_or_else(|| WordError::UnknownArrow {
            column: col,
            name: base.to_string(),
        })?;
        Ok(Letter { arrow, inverse })
    }

    /// `( seq )` followed by `^n` or `^inf`; returns the letters and whether
    /// the exponent was `inf`.
    fn group(&mut self) -> Result<(Located, bool), WordError> {
        self.pos += 1;
        let inner = self.seq()?;
        if !matches!(self.toks.get(self.pos), Some(Tok::Close(_))) {
            return Err(self.err("expected `)`"));
        }
        self.pos += 1;
        if !matches!(self.toks.get(self.pos), Some(Tok::Caret(_))) {
            return Err(self.err("expected `^` after `)`"));
        }
        self.pos += 1;
        match self.toks.get(self.pos) {
            Some(Tok::Name(_, e)) if e == "inf" => {
                self.pos += 1;
                Ok((inner, true))
            }
            Some(Tok::Name(_, e)) if e.chars().all(|c| c.is_ascii_digit()) => {
                let n: usize = e.parse().map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                let mut out = Vec::with_capacity(inner.len() * n);
                for _ in 0..n {
                    out.extend_from_slice(&inner);
                }
                Ok((out, false))
            }
            _ => Err(self.err("expected an exponent or `inf`")),
        }
    }

    /// Whether the group opening at `self.pos` carries the exponent `inf`.
    fn group_is_inf(&self) -> bool {
        let mut depth = 0usize;
        for (k, t) in self.toks.iter().enumerate().skip(self.pos) {
            match t {
                Tok::Open(_) => depth += 1,
                Tok::Close(_) => {
                    depth -= 1;
                    if depth == 0 {
                        return matches!(self.toks.get(k + 1), Some(Tok::Caret(_)))
                            && matches!(self.toks.get(k + 2), Some(Tok::Name(_, e)) if e == "inf");
                    }
                }
                _ => {}
            }
        }
        false
    }

    /// Letters and finite powers, up to a `)`, a right tail or the end.
    fn seq(&mut self) -> Result<Located, WordError> {
        let mut out = Vec::new();
        loop {
            match self.toks.get(self.pos) {
                None | Some(Tok::Close(_)) => return Ok(out),
                Some(Tok::Open(_)) if self.group_is_inf() && !out.is_empty() => return Ok(out),
                Some(Tok::Open(_)) => {
                    let c = self.col();
                    let (ls, inf) = self.group()?;
                    if inf {
                        return Err(WordError::Syntax {
                            column: c,
                            message: "`^inf` is only allowed at the right end".into(),
                        });
                    }
                    out.extend(ls);
                }
                Some(Tok::Name(c, n)) => {
                    if n == "inf" || n.contains('@') {
                        return Err(self.err("tail or empty word in the middle of a word"));
                    }
                    let l = self.letter(*c, n)?;
                    out.push((l, *c));
                    self.pos += 1;
                }
                Some(Tok::Caret(_)) => return Err(self.err("unexpected `^`")),
            }
        }
    }

    fn top(&mut self) -> Result<Vec<Piece>, WordError> {
        let mut pieces = Vec::new();
        while self.pos < self.toks.len() {
            match &self.toks[self.pos] {
                Tok::Name(c, n) if n == "inf" => {
                    let c = *c;
                    self.pos += 1;
                    if !matches!(self.toks.get(self.pos), Some(Tok::Caret(_))) {
                        return Err(self.err("expected `^(` after `inf`"));
                    }
                    self.pos += 1;
                    if !matches!(self.toks.get(self.pos), Some(Tok::Open(_))) {
                        return Err(self.err("expected `(` after `inf^`"));
                    }
                    self.pos += 1;
                    let inner = self.seq()?;
                    if !matches!(self.toks.get(self.pos), Some(Tok::Close(_))) {
                        return Err(self.err("expected `)`"));
                    }
                    self.pos += 1;
                    if !pieces.is_empty() {
                        return Err(WordError::Syntax {
                            column: c,
                            message: "`inf^( )` is only allowed at the left end".into(),
                        });
                    }
                    pieces.push(Piece::LeftTail(inner));
                }
                Tok::Name(c, n) if n.starts_with("1@") => {
                    let c = *c;
                    let rest = &n[2..];
                    let (v, side) = match rest.strip_suffix('-') {
                        Some(v) => (v, Side::Minus),
                        None => (rest.strip_suffix('+').unwrap_or(rest), Side::Plus),
                    };
                    let vid = self
                        .alg
                        .presentation()
                        .vertex_id(v)
                        .ok_or_else(|| WordError::UnknownVertex(v.to_string()))?;
                    self.pos += 1;
                    pieces.push(Piece::Empty(vid, side, c));
                }
                Tok::Open(c) => {
                    let c = *c;
                    let (ls, inf) = self.group()?;
                    if inf {
                        if self.pos != self.toks.len() {
                            return Err(WordError::Syntax {
                                column: c,
                                message: "`^inf` is only allowed at the right end".into(),
                            });
                        }
                        pieces.push(Piece::RightTail(ls));
                    } else {
                        pieces.push(Piece::Letters(ls));
                    }
                }
                Tok::Close(_) => return Err(self.err("unbalanced `)`")),
                _ => {
                    let ls = self.seq()?;
                    pieces.push(Piece::Letters(ls));
                }
            }
        }
        Ok(pieces)
    }
}

/// Parses the word grammar: `a b- (a b-)^3`, `inf^(e d-) e g (a b-)^inf`,
/// or `1@v` / `1@v-` for an empty word.
pub fn parse_word(alg: &StringAlgebra, text: &str) -> Result<AnyWord, WordError> {
    let mut p = WordParser { alg, toks: lex(text)?, pos: 0 };
    let pieces = p.top()?;
    let mut left = None;
    let mut right = None;
    let mut core: Located = Vec::new();
    let mut empty = None;
    for piece in pieces {
        match piece {
            Piece::LeftTail(l) => left = Some(l),
            Piece::RightTail(r) => right = Some(r),
            Piece::Letters(ls) => core.extend(ls),
            Piece::Empty(v, s, c) => empty = Some((v, s, c)),
        }
    }
    if let Some((v, s, c)) = empty {
        if !core.is_empty() || left.is_some() || right.is_some() {
            return Err(WordError::Syntax { column: c, message: "`1@v` must stand alone".into() });
        }
        return Ok(AnyWord::Finite(Word::empty(v, s)));
    }
    let strip = |v: &Located| v.iter().map(|x| x.0).collect::<Vec<_>>();
    if left.is_none() && right.is_none() {
        if core.is_empty() {
            return Err(WordError::Syntax { column: 1, message: "empty word".into() });
        }
        let letters = strip(&core);
        if let Err(v) = is_string(alg, &letters) {
            return Err(WordError::NotString { column: core[v.position].1, rule: v.rule });
        }
        return Ok(AnyWord::Finite(Word::from_valid(alg, letters)));
    }
    // locate the first bad letter of the materialised word for a useful column
    let mut located: Located = Vec::new();
    for _ in 0..3 {
        located.extend(left.iter().flatten().cloned());
    }
    located.extend(core.iter().cloned());
    for _ in 0..3 {
        located.extend(right.iter().flatten().cloned());
    }
    if let Err(v) = is_string(alg, &strip(&located)) {
        return Err(WordError::NotString { column: located[v.position].1, rule: v.rule });
    }
    InfiniteWord::new(alg, left.as_ref().map(strip), strip(&core), right.as_ref().map(strip))
        .map(AnyWord::Infinite)
}

/// Parses a finite word.
pub fn parse_finite(alg: &StringAlgebra, text: &str) -> Result<Word, WordError> {
    match parse_word(alg, text)? {
        AnyWord::Finite(w) => Ok(w),
        AnyWord::Infinite(_) => Err(WordError::ExpectedFinite),
    }
}

/// Parses a bare letter sequence (no powers of `inf`, may be a rotation
/// that is not itself checked as a string).
pub fn parse_letters(alg: &StringAlgebra, text: &str) -> Result<Vec<Letter>, WordError> {
    let mut p = WordParser { alg, toks: lex(text)?, pos: 0 };
    let ls = p.seq()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected token"));
    }
    Ok(ls.into_iter().map(|x| x.0).collect())
}
