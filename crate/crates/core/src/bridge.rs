//! Bridges between bands, the bridge quiver and band factorisations.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use petgraph::algo::toposort;
use petgraph::graphmap::DiGraphMap;
use serde::Serialize;
use thiserror::Error;

use crate::bands::{BandSet, ClassId, LetterAutomaton};
use crate::presentation::StringAlgebra;
use crate::words::{
    compare_to_band_power, invert_letters, is_string, letters_text, AnyWord, BandComparison,
    Letter, Side, Word,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("the bridge quiver has an oriented cycle through band {0}")]
    Cyclic(ClassId),
    #[error("bridge word runs along its source band; the overlap property fails")]
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Ascending,
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndentFilter {
    All,
    Ascending,
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BridgeEdge {
    pub source: ClassId,
    pub target: ClassId,
    pub word: Vec<Letter>,
    pub flag: Flag,
}

/// Vertices are cyclic band classes; `b` and `b⁻¹` are distinct vertices.
#[derive(Clone, Debug)]
pub struct BridgeQuiver {
    pub vertices: Vec<ClassId>,
    pub edges: Vec<BridgeEdge>,
    /// Longest path length from each vertex; `Err` if the quiver has a cycle.
    longest: Result<Vec<usize>, BridgeError>,
}

/// Smallest number of copies of `b` that covers every relation window.
fn copies(alg: &StringAlgebra, b: &[Letter]) -> usize {
    1 + alg.max_relation_len().div_ceil(b.len())
}

fn contains_rotation(w: &[Letter], rotations: &HashSet<Vec<Letter>>, lens: &BTreeSet<usize>) -> bool {
    lens.iter().any(|&p| p <= w.len() && rotations.contains(&w[w.len() - p..]))
}

/// Every string containing no rotation of a band, with the empty words at
/// each vertex on both sides. Sorted by length, then letters.
pub fn band_free_strings(alg: &StringAlgebra, bands: &BandSet) -> Vec<Word> {
    let rotations: HashSet<Vec<Letter>> = bands.all_rotations().map(|(w, _)| w.clone()).collect();
    let lens: BTreeSet<usize> = rotations.iter().map(Vec::len).collect();
    let mut out: Vec<Word> = Vec::new();
    for v in 0..alg.num_vertices() {
        out.push(Word::empty(v, Side::Plus));
        out.push(Word::empty(v, Side::Minus));
    }
    // a string longer than this revisits an automaton state, so it contains
    // a closed walk, which is a band rotation
    let aut = LetterAutomaton::new(alg);
    let cap = aut.states.len() + aut.window + 1;
    let mut stack: Vec<Vec<Letter>> = alg.letters().iter().map(|&l| vec![l]).collect();
    while let Some(w) = stack.pop() {
        if contains_rotation(&w, &rotations, &lens) {
            continue;
        }
        assert!(w.len() <= cap, "band-free strings are unbounded: is the algebra domestic?");
        for &l in alg.letters() {
            if alg.append_violation(&w, l).is_none() {
                let mut x = w.clone();
                x.push(l);
                stack.push(x);
            }
        }
        out.push(Word::from_valid(alg, w));
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Band-free `u` (possibly empty) with `b u b′` a string and no split
/// `u = u₁u₂` around a third band, i.e. with `u₁ r u₂` a string for a
/// rotation `r` of a band class other than those of `b` and `b′`.
pub fn bridges(
    alg: &StringAlgebra,
    bands: &BandSet,
    free: &[Word],
    b: ClassId,
    b2: ClassId,
) -> Vec<Vec<Letter>> {
    let (rb, rb2) = (bands.repr(b), bands.repr(b2));
    let (mb, mb2) = (copies(alg, rb), copies(alg, rb2));
    let others: Vec<&Vec<Letter>> = bands
        .all_rotations()
        .filter(|&(_, c)| c != b && c != b2)
        .map(|(w, _)| w)
        .collect();
    let mut out = BTreeSet::new();
    for u in free {
        let u = u.letters();
        if !u.is_empty() && (alg.left(u[0]) != alg.right(rb[rb.len() - 1])) {
            continue;
        }
        let mut s: Vec<Letter> = rb.repeat(mb);
        s.extend_from_slice(u);
        s.extend(rb2.repeat(mb2));
        if is_string(alg, &s).is_err() {
            continue;
        }
        let splits = (1..u.len()).any(|i| {
            others.iter().any(|r| {
                let mut t = u[..i].to_vec();
                t.extend_from_slice(r);
                t.extend_from_slice(&u[i..]);
                is_string(alg, &t).is_ok()
            })
        });
        if !splits {
            out.insert(u.to_vec());
        }
    }
    out.into_iter().collect()
}

/// Ascends or descends from `b` along `b u b′`.
pub fn edge_flag(
    alg: &StringAlgebra,
    bands: &BandSet,
    b: ClassId,
    u: &[Letter],
    b2: ClassId,
) -> Result<Flag, BridgeError> {
    let rb = bands.repr(b);
    let mut s = rb.to_vec();
    s.extend_from_slice(u);
    s.extend(bands.repr(b2).repeat(copies(alg, bands.repr(b2)) + 1));
    match compare_to_band_power(&s, rb) {
        Ok(BandComparison::Ascends) => Ok(Flag::Ascending),
        Ok(BandComparison::Descends) => Ok(Flag::Descending),
        _ => Err(BridgeError::Periodic),
    }
}

pub fn bridge_quiver(alg: &StringAlgebra, bands: &BandSet) -> Result<BridgeQuiver, BridgeError> {
    let free = band_free_strings(alg, bands);
    let vertices: Vec<ClassId> = (0..bands.len()).collect();
    let mut edges = Vec::new();
    for &b in &vertices {
        for &b2 in &vertices {
            if b == b2 {
                continue;
            }
            for u in bridges(alg, bands, &free, b, b2) {
                let flag = edge_flag(alg, bands, b, &u, b2)?;
                edges.push(BridgeEdge { source: b, target: b2, word: u, flag });
            }
        }
    }
    edges.sort();
    let longest = longest_paths(vertices.len(), &edges);
    Ok(BridgeQuiver { vertices, edges, longest })
}

fn longest_paths(n: usize, edges: &[BridgeEdge]) -> Result<Vec<usize>, BridgeError> {
    let mut g: DiGraphMap<ClassId, ()> = DiGraphMap::new();
    for v in 0..n {
        g.add_node(v);
    }
    for e in edges {
        g.add_edge(e.source, e.target, ());
    }
    let order = toposort(&g, None).map_err(|c| BridgeError::Cyclic(c.node_id()))?;
    let mut longest = vec![0usize; n];
    for &v in order.iter().rev() {
        longest[v] = g.neighbors(v).map(|t| longest[t] + 1).max().unwrap_or(0);
    }
    Ok(longest)
}

impl BridgeQuiver {
    pub fn is_acyclic(&self) -> bool {
        self.longest.is_ok()
    }

    pub fn outgoing(&self, b: ClassId) -> impl Iterator<Item = &BridgeEdge> {
        self.edges.iter().filter(move |e| e.source == b)
    }

    /// Longest path length starting at `b`.
    pub fn longest_from(&self, b: ClassId) -> Result<usize, BridgeError> {
        self.longest.as_ref().map(|l| l[b]).map_err(Clone::clone)
    }

    /// Maximal path length in the whole quiver.
    pub fn longest_path(&self) -> Result<usize, BridgeError> {
        self.longest.as_ref().map(|l| l.iter().copied().max().unwrap_or(0)).map_err(Clone::clone)
    }

    /// Longest path from `b` whose first edge has the requested flag.
    pub fn indent(&self, b: ClassId, filter: IndentFilter) -> Result<usize, BridgeError> {
        let longest = self.longest.as_ref().map_err(Clone::clone)?;
        Ok(self
            .outgoing(b)
            .filter(|e| match filter {
                IndentFilter::All => true,
                IndentFilter::Ascending => e.flag == Flag::Ascending,
                IndentFilter::Descending => e.flag == Flag::Descending,
            })
            .map(|e| 1 + longest[e.target])
            .max()
            .unwrap_or(0))
    }

    /// Graphviz rendering: solid edges ascend, dashed edges descend.
    pub fn to_dot(&self, alg: &StringAlgebra, bands: &BandSet) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph bridge_quiver {{");
        let _ = writeln!(s, "  label=\"{}\";", alg.name());
        for &v in &self.vertices {
            let _ = writeln!(s, "  b{v} [label=\"{}\"];", letters_text(alg, bands.repr(v)));
        }
        for e in &self.edges {
            let style = match e.flag {
                Flag::Ascending => "solid",
                Flag::Descending => "dashed",
            };
            let _ = writeln!(
                s,
                "  b{} -> b{} [label=\"{}\", style={style}];",
                e.source,
                e.target,
                bridge_text(alg, &e.word)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Text of a bridge word; the empty bridge prints as `1`.
pub fn bridge_text(alg: &StringAlgebra, u: &[Letter]) -> String {
    if u.is_empty() {
        "1".to_string()
    } else {
        letters_text(alg, u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Power {
    Finite(usize),
    Infinite,
}

/// `w = c₁ b₁^k₁ c₂ … b_s^k_s c_{s+1}` with band representatives `bᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandFactorisation {
    pub pieces: Vec<Vec<Letter>>,
    pub bands: Vec<(ClassId, Power)>,
}

impl BandFactorisation {
    /// `s - 1`, or `None` when no band occurs.
    pub fn band_length(&self) -> Option<usize> {
        self.bands.len().checked_sub(1)
    }

    /// Concatenation with infinite powers cut to `periods` copies.
    pub fn expand(&self, bands: &BandSet, periods: usize) -> Vec<Letter> {
        let mut out = self.pieces[0].clone();
        for (i, &(c, k)) in self.bands.iter().enumerate() {
            let k = match k {
                Power::Finite(k) => k,
                Power::Infinite => periods,
            };
            out.extend(bands.repr(c).repeat(k));
            out.extend_from_slice(&self.pieces[i + 1]);
        }
        out
    }
}

/// Greedy scan: at each position take a band representative if one starts
/// there, with its maximal power. Distinct bands never overlap, so the
/// result is the unique factorisation.
fn factorise_letters(bands: &BandSet, w: &[Letter]) -> BandFactorisation {
    let mut pieces = vec![Vec::new()];
    let mut found = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let hit = bands.classes().iter().find(|c| w[i..].starts_with(&c.repr));
        match hit {
            Some(c) => {
                let p = c.repr.len();
                let mut k = 0;
                while w[i + k * p..].starts_with(&c.repr) {
                    k += 1;
                }
                found.push((c.id, Power::Finite(k)));
                pieces.push(Vec::new());
                i += k * p;
            }
            None => {
                pieces.last_mut().unwrap().push(w[i]);
                i += 1;
            }
        }
    }
    BandFactorisation { pieces, bands: found }
}

pub fn band_factorise(alg: &StringAlgebra, bands: &BandSet, w: &AnyWord) -> BandFactorisation {
    match w {
        AnyWord::Finite(w) => factorise_letters(bands, w.letters()),
        AnyWord::Infinite(iw) => {
            let lp = iw.left_tail().map_or(0, <[Letter]>::len);
            let rp = iw.right_tail().map_or(0, <[Letter]>::len);
            let periods = 3 + (iw.core().len() + alg.max_relation_len()) / lp.max(rp).max(1);
            let win = iw.materialise(periods);
            let mut f = factorise_letters(bands, &win.letters);
            if let Some(l) = iw.left_tail() {
                let class = bands.class_of_cyclic(l).expect("tails are bands");
                assert!(f.bands.first().map(|b| b.0) == Some(class) && f.pieces[0].len() < lp);
                f.pieces[0].clear();
                f.bands[0].1 = Power::Infinite;
            }
            if let Some(r) = iw.right_tail() {
                let class = bands.class_of_cyclic(r).expect("tails are bands");
                let last = f.bands.len() - 1;
                assert!(f.bands[last].0 == class && f.pieces[last + 1].len() < rp);
                f.pieces[last + 1].clear();
                f.bands[last].1 = Power::Infinite;
            }
            f
        }
    }
}

/// Inverse bridge of an edge, for the anti-automorphism check.
pub fn inverse_edge(bands: &BandSet, e: &BridgeEdge) -> (ClassId, ClassId, Vec<Letter>) {
    (bands.inverse(e.target), bands.inverse(e.source), invert_letters(&e.word))
}
