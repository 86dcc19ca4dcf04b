//! Quiver-with-relations presentations: the text format, axiom checks,
//! opposite algebras and the H-set partition of letters at each vertex.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::words::{Letter, Side};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A quiver with monomial relations.
///
/// Vertices and arrows are kept sorted by name, so arrow ids order letters
/// lexicographically. A relation `[r1, .., rm]` is the path `r1 ∘ .. ∘ rm`:
/// `rm` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<ArrowId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("relation mentions unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation `{0}` is not a composable path")]
    NotComposable(String),
    #[error("relation `{0}` has length < 2; remove the arrow instead")]
    ShortRelation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// One failed string-algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Violation {
    InDegree { vertex: String, count: usize },
    OutDegree { vertex: String, count: usize },
    /// Several arrows β with βα nonzero.
    SuccessorNotUnique { arrow: String, arrows: Vec<String> },
    /// Several arrows γ with αγ nonzero.
    PredecessorNotUnique { arrow: String, arrows: Vec<String> },
    /// An oriented cycle avoiding every relation, written as a path.
    InfiniteDimensional { cycle: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InDegree { vertex, count } => {
                write!(f, "in-degree {count} > 2 at vertex {vertex}")
            }
            Violation::OutDegree { vertex, count } => {
                write!(f, "out-degree {count} > 2 at vertex {vertex}")
            }
            Violation::SuccessorNotUnique { arrow, arrows } => write!(
                f,
                "arrow {arrow} composes nonzero after several arrows: {}",
                arrows.join(", ")
            ),
            Violation::PredecessorNotUnique { arrow, arrows } => write!(
                f,
                "arrow {arrow} composes nonzero before several arrows: {}",
                arrows.join(", ")
            ),
            Violation::InfiniteDimensional { cycle } => {
                write!(f, "oriented cycle avoiding the relations: {}", cycle.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("not a string algebra: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct Violations(pub Vec<Violation>);

impl Presentation {
    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrows.binary_search_by(|a| a.name.as_str().cmp(name)).ok()
    }

    /// Builds a presentation from names, sorting vertices and arrows.
    pub fn from_parts(
        name: &str,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[&str]],
    ) -> Result<Presentation, ParseError> {
        let mut text = format!("algebra {name}\nvertices: {}\n", vertices.join(" "));
        if !arrows.is_empty() {
            let items: Vec<String> =
                arrows.iter().map(|(a, s, t)| format!("{a}: {s} -> {t}")).collect();
            text.push_str(&format!("arrows: {}\n", items.join(" , ")));
        }
        if !relations.is_empty() {
            let items: Vec<String> = relations.iter().map(|r| r.join(" ")).collect();
            text.push_str(&format!("relations: {}\n", items.join(" , ")));
        }
        parse_presentation(&text)
    }

    /// Reverses every arrow and every relation.
    pub fn opposite(&self) -> Presentation {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let name = match self.name.strip_suffix("_op") {
            Some(base) => base.to_string(),
            None => format!("{}_op", self.name),
        };
        Presentation {
            name,
            vertices: self.vertices.clone(),
            arrows,
            relations,
        }
    }

    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn relation_text(&self, r: &[ArrowId]) -> String {
        r.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Every failed axiom, in a fixed order.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for a in &self.arrows {
            outdeg[a.source] += 1;
            indeg[a.target] += 1;
        }
        for v in 0..n {
            if indeg[v] > 2 {
                out.push(Violation::InDegree { vertex: self.vertices[v].clone(), count: indeg[v] });
            }
            if outdeg[v] > 2 {
                out.push(Violation::OutDegree { vertex: self.vertices[v].clone(), count: outdeg[v] });
            }
        }
        let zero: HashSet<(ArrowId, ArrowId)> = self
            .relations
            .iter()
            .filter(|r| r.len() == 2)
            .map(|r| (r[0], r[1]))
            .collect();
        for (alpha, a) in self.arrows.iter().enumerate() {
            let after: Vec<String> = self
                .arrows
                .iter()
                .enumerate()
                .filter(|(beta, b)| b.source == a.target && !zero.contains(&(*beta, alpha)))
                .map(|(_, b)| b.name.clone())
                .collect();
            if after.len() > 1 {
                out.push(Violation::SuccessorNotUnique { arrow: a.name.clone(), arrows: after });
            }
            let before: Vec<String> = self
                .arrows
                .iter()
                .enumerate()
                .filter(|(gamma, g)| g.target == a.source && !zero.contains(&(alpha, *gamma)))
                .map(|(_, g)| g.name.clone())
                .collect();
            if before.len() > 1 {
                out.push(Violation::PredecessorNotUnique { arrow: a.name.clone(), arrows: before });
            }
        }
        if let Some(cycle) = self.nonzero_cycle() {
            out.push(Violation::InfiniteDimensional {
                cycle: cycle.iter().map(|&a| self.arrows[a].name.clone()).collect(),
            });
        }
        out
    }

    /// An arbitrarily long nonzero path exists iff the automaton whose states
    /// are nonzero paths of length `k` has a cycle. Paths are in written
    /// order, extended on the right by the arrow applied before.
    fn nonzero_cycle(&self) -> Option<Vec<ArrowId>> {
        let k = self.max_relation_len().saturating_sub(1).max(1);
        let rels: HashSet<&[ArrowId]> = self.relations.iter().map(Vec::as_slice).collect();
        let lens: Vec<usize> = {
            let mut l: Vec<usize> = self.relations.iter().map(Vec::len).collect();
            l.sort_unstable();
            l.dedup();
            l
        };
        let extends = |path: &[ArrowId], next: ArrowId| -> bool {
            let last = *path.last().unwrap();
            if self.arrows[last].source != self.arrows[next].target {
                return false;
            }
            let mut p = path.to_vec();
            p.push(next);
            !lens.iter().any(|&m| m <= p.len() && rels.contains(&p[p.len() - m..]))
        };
        // states: nonzero paths of length k
        let mut states: Vec<Vec<ArrowId>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for s in &states {
                for a in 0..self.arrows.len() {
                    if extends(s, a) {
                        let mut t = s.clone();
                        t.push(a);
                        next.push(t);
                    }
                }
            }
            states = next;
        }
        let index: HashMap<&[ArrowId], usize> =
            states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let succ: Vec<Vec<(usize, ArrowId)>> = states
            .iter()
            .map(|s| {
                (0..self.arrows.len())
                    .filter(|&a| extends(s, a))
                    .map(|a| {
                        let mut t = s[1..].to_vec();
                        t.push(a);
                        (index[t.as_slice()], a)
                    })
                    .collect()
            })
            .collect();
        // iterative DFS with colours; on a back edge read off the cycle
        let mut colour = vec![0u8; states.len()];
        for root in 0..states.len() {
            if colour[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize, ArrowId)> = vec![(root, 0, usize::MAX)];
            colour[root] = 1;
            while let Some(&mut (node, ref mut i, _)) = stack.last_mut() {
                if *i < succ[node].len() {
                    let (to, a) = succ[node][*i];
                    *i += 1;
                    match colour[to] {
                        0 => {
                            colour[to] = 1;
                            stack.push((to, 0, a));
                        }
                        1 => {
                            let pos = stack.iter().position(|e| e.0 == to).unwrap();
                            let mut cycle: Vec<ArrowId> =
                                stack[pos + 1..].iter().map(|e| e.2).collect();
                            cycle.push(a);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    colour[node] = 2;
                    stack.pop();
                }
            }
        }
        None
    }
}

impl fmt::Display for Presentation {
    /// Serialises back to the text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {}", self.name)?;
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        if !self.arrows.is_empty() {
            let items: Vec<String> = self
                .arrows
                .iter()
                .map(|a| {
                    format!("{}: {} -> {}", a.name, self.vertices[a.source], self.vertices[a.target])
                })
                .collect();
            writeln!(f, "arrows: {}", items.join(" , "))?;
        }
        if !self.relations.is_empty() {
            let items: Vec<String> = self.relations.iter().map(|r| self.relation_text(r)).collect();
            writeln!(f, "relations: {}", items.join(" , "))?;
        }
        Ok(())
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Splits `text` on `sep`, yielding each trimmed piece with the 0-based
/// char column where it starts.
fn pieces(text: &str, base: usize, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), sep))) {
        if c == sep {
            let raw = &text[start..i];
            let lead = raw.len() - raw.trim_start().len();
            out.push((base + text[..start + lead].chars().count(), raw.trim()));
            start = i + c.len_utf8();
        }
    }
    out
}

fn words_with_columns(text: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = base;
    let mut start: Option<(usize, usize)> = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some((s, sc)) = start.take() {
                out.push((sc, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some((i, col));
        }
        col += 1;
    }
    if let Some((s, sc)) = start {
        out.push((sc, &text[s..]));
    }
    out
}

struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column + 1, kind }
    }
}

/// Parses the line-oriented presentation format.
///
/// ```text
/// algebra lam2
/// vertices: 1 2 3 4
/// arrows: a: 1 -> 2 , b: 1 -> 2 , g: 2 -> 3 , d: 3 -> 4 , e: 3 -> 4
/// relations: g b , d g      # "g b" means b first, then g
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<(Pos, String)> = Vec::new();
    let mut arrows: Vec<(Pos, String, (Pos, String), (Pos, String))> = Vec::new();
    let mut relations: Vec<(Pos, Vec<(Pos, String)>)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let lead = body.chars().take_while(|c| c.is_whitespace()).count();
        let trimmed = body.trim();
        let at = |column: usize| Pos { line, column };
        if let Some(rest) = trimmed.strip_prefix("algebra") {
            let ws = words_with_columns(rest, lead + "algebra".len());
            match ws.as_slice() {
                [(c, n)] if is_ident(n) && rest.starts_with(char::is_whitespace) => {
                    if name.is_some() {
                        return Err(at(*c).err(ParseErrorKind::Syntax("second `algebra` line".into())));
                    }
                    name = Some(n.to_string());
                }
                _ => {
                    return Err(at(lead).err(ParseErrorKind::Syntax(
                        "expected `algebra <name>`".into(),
                    )))
                }
            }
        } else if let Some((key, rest)) = trimmed.split_once(':') {
            let base = lead + key.chars().count() + 1;
            match key.trim() {
                "vertices" => {
                    for (c, v) in words_with_columns(rest, base) {
                        if !is_ident(v) {
                            return Err(at(c).err(ParseErrorKind::Syntax(format!(
                                "bad vertex name `{v}`"
                            ))));
                        }
                        vertices.push((at(c), v.to_string()));
                    }
                }
                "arrows" => {
                    for (c, item) in pieces(rest, base, ',') {
                        if item.is_empty() {
                            return Err(at(c).err(ParseErrorKind::Syntax("empty arrow item".into())));
                        }
                        let Some((an, ends)) = item.split_once(':') else {
                            return Err(at(c).err(ParseErrorKind::Syntax(
                                "expected `name: source -> target`".into(),
                            )));
                        };
                        let an = an.trim();
                        if !is_ident(an) {
                            return Err(at(c).err(ParseErrorKind::Syntax(format!(
                                "bad arrow name `{an}`"
                            ))));
                        }
                        let ends_col = c + item[..item.find(':').unwrap() + 1].chars().count();
                        let ws = words_with_columns(ends, ends_col);
                        match ws.as_slice() {
                            [(sc, s), (_, "->"), (tc, t)] if is_ident(s) && is_ident(t) => {
                                arrows.push((
                                    at(c),
                                    an.to_string(),
                                    (at(*sc), s.to_string()),
                                    (at(*tc), t.to_string()),
                                ));
                            }
                            _ => {
                                return Err(at(ends_col).err(ParseErrorKind::Syntax(
                                    "expected `source -> target`".into(),
                                )))
                            }
                        }
                    }
                }
                "relations" => {
                    for (c, item) in pieces(rest, base, ',') {
                        let ws = words_with_columns(item, c);
                        if ws.is_empty() {
                            return Err(at(c).err(ParseErrorKind::Syntax("empty relation".into())));
                        }
                        let mut rel = Vec::new();
                        for (wc, w) in ws {
                            if !is_ident(w) {
                                return Err(at(wc).err(ParseErrorKind::Syntax(format!(
                                    "bad arrow name `{w}`"
                                ))));
                            }
                            rel.push((at(wc), w.to_string()));
                        }
                        relations.push((at(c), rel));
                    }
                }
                other => {
                    return Err(at(lead).err(ParseErrorKind::Syntax(format!(
                        "unknown section `{other}`"
                    ))))
                }
            }
        } else {
            return Err(at(lead).err(ParseErrorKind::Syntax(format!("unexpected `{trimmed}`"))));
        }
    }

    let name = name.ok_or_else(|| {
        Pos { line: 1, column: 0 }.err(ParseErrorKind::Syntax("missing `algebra <name>` line".into()))
    })?;

    let mut vnames: Vec<String> = Vec::new();
    for (pos, v) in &vertices {
        if vnames.contains(v) {
            return Err(pos.err(ParseErrorKind::DuplicateVertex(v.clone())));
        }
        vnames.push(v.clone());
    }
    vnames.sort();
    let vid = |pos: &Pos, v: &str| {
        vnames
            .binary_search_by(|x| x.as_str().cmp(v))
            .map_err(|_| pos.err(ParseErrorKind::UnknownVertex(v.to_string())))
    };

    let mut by_name: BTreeMap<String, Arrow> = BTreeMap::new();
    for (pos, an, (sp, s), (tp, t)) in &arrows {
        let arrow = Arrow { name: an.clone(), source: vid(sp, s)?, target: vid(tp, t)? };
        if by_name.insert(an.clone(), arrow).is_some() {
            return Err(pos.err(ParseErrorKind::DuplicateArrow(an.clone())));
        }
    }
    let arrow_list: Vec<Arrow> = by_name.into_values().collect();
    let aid = |pos: &Pos, a: &str| {
        arrow_list
            .binary_search_by(|x| x.name.as_str().cmp(a))
            .map_err(|_| pos.err(ParseErrorKind::UnknownArrow(a.to_string())))
    };

    let mut rels = Vec::new();
    for (pos, rel) in &relations {
        let text = rel.iter().map(|(_, w)| w.as_str()).collect::<Vec<_>>().join(" ");
        let ids = rel.iter().map(|(p, w)| aid(p, w)).collect::<Result<Vec<_>, _>>()?;
        if ids.len() < 2 {
            return Err(pos.err(ParseErrorKind::ShortRelation(text)));
        }
        if ids.windows(2).any(|w| arrow_list[w[0]].source != arrow_list[w[1]].target) {
            return Err(pos.err(ParseErrorKind::NotComposable(text)));
        }
        rels.push(ids);
    }

    Ok(Presentation { name, vertices: vnames, arrows: arrow_list, relations: rels })
}

/// Which side each letter entering a vertex lies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HAssignment {
    side: HashMap<Letter, Side>,
}

impl HAssignment {
    pub fn side(&self, l: Letter) -> Side {
        self.side[&l]
    }

    /// Letters of `H_{s,i}` in letter order.
    pub fn set(&self, alg: &StringAlgebra, s: VertexId, i: Side) -> Vec<Letter> {
        let mut v: Vec<Letter> = alg
            .letters()
            .iter()
            .copied()
            .filter(|&l| alg.left(l) == s && self.side[&l] == i)
            .collect();
        v.sort();
        v
    }
}

/// A presentation together with the derived data every algorithm needs.
#[derive(Clone, Debug)]
pub struct StringAlgebra {
    presentation: Presentation,
    letters: Vec<Letter>,
    direct_rel: HashSet<Vec<ArrowId>>,
    inverse_rel: HashSet<Vec<ArrowId>>,
    rel_lens: Vec<usize>,
    h: HAssignment,
    violations: Vec<Violation>,
}

impl StringAlgebra {
    /// Accepts `p` only if it satisfies every string-algebra axiom.
    pub fn new(p: Presentation) -> Result<StringAlgebra, Violations> {
        let violations = p.violations();
        if !violations.is_empty() {
            return Err(Violations(violations));
        }
        let alg = StringAlgebra::build(p, Vec::new());
        if let Err(l) = alg.h_conflicts() {
            panic!("internal invariant violated: no legal side for letter {}", alg.letter_name(l));
        }
        Ok(alg)
    }

    /// Wraps `p` without rejecting axiom failures (they stay available via
    /// [`StringAlgebra::violations`]). String validity stays well defined;
    /// results that rely on the axioms carry no guarantee.
    pub fn new_unchecked(p: Presentation) -> StringAlgebra {
        let violations = p.violations();
        StringAlgebra::build(p, violations)
    }

    pub fn parse(text: &str) -> Result<StringAlgebra, crate::Error> {
        Ok(StringAlgebra::new(parse_presentation(text)?)?)
    }

    fn build(p: Presentation, violations: Vec<Violation>) -> StringAlgebra {
        let letters: Vec<Letter> = (0..p.arrows.len())
            .flat_map(|a| [Letter::direct(a), Letter::inverse(a)])
            .collect();
        let direct_rel: HashSet<Vec<ArrowId>> = p.relations.iter().cloned().collect();
        let inverse_rel = p.relations.iter().map(|r| r.iter().rev().copied().collect()).collect();
        let mut rel_lens: Vec<usize> = p.relations.iter().map(Vec::len).collect();
        rel_lens.sort_unstable();
        rel_lens.dedup();
        let mut alg = StringAlgebra {
            presentation: p,
            letters,
            direct_rel,
            inverse_rel,
            rel_lens,
            h: HAssignment { side: HashMap::new() },
            violations,
        };
        alg.h = alg.assign_sides();
        alg
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn name(&self) -> &str {
        &self.presentation.name
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.presentation.arrows[a]
    }

    pub fn num_arrows(&self) -> usize {
        self.presentation.arrows.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.presentation.vertices.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.presentation.vertices[v]
    }

    /// All letters, sorted (arrow name, then direct before inverse).
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let n = &self.presentation.arrows[l.arrow].name;
        if l.inverse {
            format!("{n}-")
        } else {
            n.clone()
        }
    }

    /// Vertex on the left of `l` when it is read inside a word.
    pub fn left(&self, l: Letter) -> VertexId {
        let a = &self.presentation.arrows[l.arrow];
        if l.inverse {
            a.source
        } else {
            a.target
        }
    }

    /// Vertex on the right of `l`.
    pub fn right(&self, l: Letter) -> VertexId {
        let a = &self.presentation.arrows[l.arrow];
        if l.inverse {
            a.target
        } else {
            a.source
        }
    }

    /// Longest relation, or 0.
    pub fn max_relation_len(&self) -> usize {
        self.rel_lens.last().copied().unwrap_or(0)
    }

    /// Checks the rules broken by appending `next` to the valid word `w`.
    /// Only relations ending at the new letter need checking.
    pub fn append_violation(&self, w: &[Letter], next: Letter) -> Option<crate::words::Rule> {
        use crate::words::Rule;
        let &last = w.last()?;
        if self.right(last) != self.left(next) {
            return Some(Rule::NotComposable);
        }
        if last == next.inv() {
            return Some(Rule::Backtrack);
        }
        let run = w.iter().rev().take_while(|l| l.inverse == next.inverse).count() + 1;
        let table = if next.inverse { &self.inverse_rel } else { &self.direct_rel };
        let mut tail: Vec<ArrowId> = Vec::with_capacity(run);
        tail.extend(w[w.len() + 1 - run..].iter().map(|l| l.arrow));
        tail.push(next.arrow);
        for &m in &self.rel_lens {
            if m <= tail.len() && table.contains(&tail[tail.len() - m..]) {
                let rel = &tail[tail.len() - m..];
                let rel: Vec<ArrowId> =
                    if next.inverse { rel.iter().rev().copied().collect() } else { rel.to_vec() };
                return Some(Rule::Relation(self.presentation.relation_text(&rel)));
            }
        }
        None
    }

    /// Whether `l1⁻¹ l2` is a string, i.e. `l1` and `l2` may not share a side.
    fn conflict(&self, l1: Letter, l2: Letter) -> bool {
        l1 != l2 && self.append_violation(&[l1.inv()], l2).is_none()
    }

    fn entering(&self, s: VertexId) -> Vec<Letter> {
        self.letters.iter().copied().filter(|&l| self.left(l) == s).collect()
    }

    /// Two-colours the conflict graph at each vertex, visiting letters in
    /// order and putting the first letter of each component on `+`.
    fn assign_sides(&self) -> HAssignment {
        let mut side = HashMap::new();
        for s in 0..self.num_vertices() {
            let ls = self.entering(s);
            for &root in &ls {
                if side.contains_key(&root) {
                    continue;
                }
                side.insert(root, Side::Plus);
                let mut queue = vec![root];
                while let Some(l) = queue.pop() {
                    let sl = side[&l];
                    for &m in &ls {
                        if !side.contains_key(&m) && self.conflict(l, m) {
                            side.insert(m, sl.flip());
                            queue.push(m);
                        }
                    }
                }
            }
        }
        HAssignment { side }
    }

    /// First letter whose side clashes with a conflicting letter.
    fn h_conflicts(&self) -> Result<(), Letter> {
        for s in 0..self.num_vertices() {
            let ls = self.entering(s);
            for &l in &ls {
                for &m in &ls {
                    if self.conflict(l, m) && self.h.side(l) == self.h.side(m) {
                        return Err(l);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn h_assignment(&self) -> &HAssignment {
        &self.h
    }

    pub fn side(&self, l: Letter) -> Side {
        self.h.side(l)
    }

    pub fn opposite(&self) -> StringAlgebra {
        let p = self.presentation.opposite();
        if self.is_valid() {
            StringAlgebra::new(p).expect("opposite of a string algebra is a string algebra")
        } else {
            StringAlgebra::new_unchecked(p)
        }
    }
}

pub fn validate_string_algebra(p: Presentation) -> Result<StringAlgebra, Violations> {
    StringAlgebra::new(p)
}

pub fn opposite_presentation(p: &Presentation) -> Presentation {
    p.opposite()
}
