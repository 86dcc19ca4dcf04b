//! Band enumeration, domesticity and canonical band representatives.
//!
//! Bands are closed walks in an automaton whose states are strings of a
//! fixed window length; with relations of length at most two the states are
//! single letters. A string algebra is domestic iff every strongly connected
//! component of that automaton is a single simple cycle (or trivial).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;
use thiserror::Error;

use crate::presentation::StringAlgebra;
use crate::words::{invert_letters, letters_text, primitive_root_len, Letter};

pub type ClassId = usize;

/// A band up to rotation. Inverse bands are separate classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandClass {
    pub id: ClassId,
    /// Least rotation that starts with a direct and ends with an inverse letter.
    #[serde(skip)]
    pub repr: Vec<Letter>,
    pub inverse: ClassId,
}

impl BandClass {
    /// Classes come in pairs; the member with the smaller id is primary.
    pub fn is_primary(&self) -> bool {
        self.id <= self.inverse
    }
}

/// States are strings of length `window`; an edge appends one letter.
#[derive(Clone, Debug)]
pub struct LetterAutomaton {
    pub window: usize,
    pub states: Vec<Vec<Letter>>,
    pub edges: Vec<Vec<(usize, Letter)>>,
}

impl LetterAutomaton {
    pub fn new(alg: &StringAlgebra) -> LetterAutomaton {
        let window = alg.max_relation_len().saturating_sub(1).max(1);
        let mut states: Vec<Vec<Letter>> = alg.letters().iter().map(|&l| vec![l]).collect();
        for _ in 1..window {
            let mut next = Vec::new();
            for s in &states {
                for &l in alg.letters() {
                    if alg.append_violation(s, l).is_none() {
                        let mut t = s.clone();
                        t.push(l);
                        next.push(t);
                    }
                }
            }
            states = next;
        }
        let index: HashMap<&[Letter], usize> =
            states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let edges = states
            .iter()
            .map(|s| {
                alg.letters()
                    .iter()
                    .filter(|&&l| alg.append_violation(s, l).is_none())
                    .map(|&l| {
                        let mut t = s[1..].to_vec();
                        t.push(l);
                        (index[t.as_slice()], l)
                    })
                    .collect()
            })
            .collect();
        LetterAutomaton { window, states, edges }
    }

    fn graph(&self) -> DiGraph<(), Letter> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..self.states.len()).map(|_| g.add_node(())).collect();
        for (s, out) in self.edges.iter().enumerate() {
            for &(t, l) in out {
                g.add_edge(nodes[s], nodes[t], l);
            }
        }
        g
    }

    /// Strongly connected components with at least one internal edge, each
    /// as (states, number of internal edges).
    pub fn cyclic_components(&self) -> Vec<(Vec<usize>, usize)> {
        let g = self.graph();
        let mut out = Vec::new();
        for comp in tarjan_scc(&g) {
            let set: BTreeSet<usize> = comp.iter().map(|n| n.index()).collect();
            let internal: usize = set
                .iter()
                .map(|&s| self.edges[s].iter().filter(|(t, _)| set.contains(t)).count())
                .sum();
            if internal > 0 {
                out.push((set.into_iter().collect(), internal));
            }
        }
        out.sort();
        out
    }

    /// Every cyclic word read along closed walks of length at most `max_len`.
    fn closed_walks(&self, max_len: usize) -> BTreeSet<Vec<Letter>> {
        let mut out = BTreeSet::new();
        for s in 0..self.states.len() {
            let mut stack: Vec<(usize, Vec<Letter>)> = vec![(s, Vec::new())];
            while let Some((at, word)) = stack.pop() {
                if word.len() == max_len {
                    continue;
                }
                for &(t, l) in &self.edges[at] {
                    let mut w = word.clone();
                    w.push(l);
                    if t == s {
                        out.insert(w.clone());
                    }
                    stack.push((t, w));
                }
            }
        }
        out
    }
}

fn rotations(w: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..w.len()).map(move |i| {
        let mut r = w[i..].to_vec();
        r.extend_from_slice(&w[..i]);
        r
    })
}

/// Least rotation with a direct first letter and an inverse last letter.
pub fn least_band_rotation(w: &[Letter]) -> Option<Vec<Letter>> {
    rotations(w)
        .filter(|r| !r[0].inverse && r[r.len() - 1].inverse)
        .min()
}

/// Two different bands starting with the same letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip)]
    pub first: Vec<Letter>,
    #[serde(skip)]
    pub second: Vec<Letter>,
}

impl Witness {
    pub fn display(&self, alg: &StringAlgebra) -> (String, String) {
        (letters_text(alg, &self.first), letters_text(alg, &self.second))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BandError {
    #[error("not a rotation of any band")]
    NotBand,
    #[error("the algebra is not domestic")]
    NonDomestic,
}

/// Where a cyclic word sits among the band classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BandMatch {
    /// The cyclic class of the word itself.
    pub class: ClassId,
    /// Rotating the word left by `offset` letters gives the representative.
    pub offset: usize,
    /// The class is the non-primary member of its inverse pair.
    pub inverted: bool,
}

/// All bands of a domestic algebra.
#[derive(Clone, Debug)]
pub struct BandSet {
    classes: Vec<BandClass>,
    rotation_index: HashMap<Vec<Letter>, (ClassId, usize)>,
}

impl BandSet {
    fn from_cycles(cycles: Vec<Vec<Letter>>) -> BandSet {
        let mut reprs: Vec<Vec<Letter>> = cycles
            .iter()
            .map(|c| least_band_rotation(c).expect("a band mixes directions"))
            .collect();
        reprs.sort();
        reprs.dedup();
        let mut rotation_index = HashMap::new();
        for (id, r) in reprs.iter().enumerate() {
            for (j, rot) in rotations(r).enumerate() {
                rotation_index.insert(rot, (id, (r.len() - j) % r.len()));
            }
        }
        let classes = reprs
            .iter()
            .enumerate()
            .map(|(id, r)| BandClass {
                id,
                repr: r.clone(),
                inverse: rotation_index[&invert_letters(r)].0,
            })
            .collect();
        BandSet { classes, rotation_index }
    }

    pub fn classes(&self) -> &[BandClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &BandClass {
        &self.classes[id]
    }

    pub fn repr(&self, id: ClassId) -> &[Letter] {
        &self.classes[id].repr
    }

    pub fn inverse(&self, id: ClassId) -> ClassId {
        self.classes[id].inverse
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of bands up to rotation and inversion.
    pub fn n_domestic(&self) -> usize {
        self.classes.iter().filter(|c| c.is_primary()).count()
    }

    /// Identifies a rotation of a band (or of an inverse band).
    pub fn canonical_band(&self, w: &[Letter]) -> Result<BandMatch, BandError> {
        let &(class, offset) = self.rotation_index.get(w).ok_or(BandError::NotBand)?;
        Ok(BandMatch { class, offset, inverted: !self.classes[class].is_primary() })
    }

    /// Like [`BandSet::canonical_band`] but also accepts proper powers.
    pub fn class_of_cyclic(&self, w: &[Letter]) -> Result<ClassId, BandError> {
        if w.is_empty() {
            return Err(BandError::NotBand);
        }
        let r = primitive_root_len(w);
        self.canonical_band(&w[..r]).map(|m| m.class)
    }

    /// Every rotation of every band, for substring scans.
    pub fn all_rotations(&self) -> impl Iterator<Item = (&Vec<Letter>, ClassId)> {
        self.rotation_index.iter().map(|(w, &(c, _))| (w, c))
    }
}

#[derive(Clone, Debug)]
pub enum Domesticity {
    Domestic(BandSet),
    NonDomestic(Witness),
}

impl Domesticity {
    pub fn bands(&self) -> Option<&BandSet> {
        match self {
            Domesticity::Domestic(b) => Some(b),
            Domesticity::NonDomestic(_) => None,
        }
    }
}

/// Domesticity via the component criterion, with the full band list or a
/// witness pair.
pub fn is_domestic(alg: &StringAlgebra) -> Domesticity {
    let aut = LetterAutomaton::new(alg);
    let comps = aut.cyclic_components();
    if comps.iter().any(|(nodes, internal)| *internal != nodes.len()) {
        return Domesticity::NonDomestic(find_witness(&aut));
    }
    let cycles = comps
        .iter()
        .map(|(nodes, _)| {
            let set: BTreeSet<usize> = nodes.iter().copied().collect();
            let mut word = Vec::new();
            let mut at = nodes[0];
            loop {
                let &(t, l) = aut.edges[at].iter().find(|(t, _)| set.contains(t)).unwrap();
                word.push(l);
                at = t;
                if at == nodes[0] {
                    break;
                }
            }
            word
        })
        .collect();
    Domesticity::Domestic(BandSet::from_cycles(cycles))
}

pub fn enumerate_bands(alg: &StringAlgebra) -> Result<BandSet, Witness> {
    match is_domestic(alg) {
        Domesticity::Domestic(b) => Ok(b),
        Domesticity::NonDomestic(w) => Err(w),
    }
}

/// Shortest pair of distinct bands sharing a first letter, smallest letter
/// first. Searches band words of increasing length.
fn find_witness(aut: &LetterAutomaton) -> Witness {
    let limit = 4 * aut.states.len() + 4;
    for len in 1..=limit {
        let mut by_first: BTreeMap<Letter, BTreeSet<(usize, Vec<Letter>)>> = BTreeMap::new();
        for w in aut.closed_walks(len) {
            if primitive_root_len(&w) != w.len() {
                continue;
            }
            for r in rotations(&w) {
                if !r[0].inverse && r[r.len() - 1].inverse {
                    by_first.entry(r[0]).or_default().insert((r.len(), r));
                }
            }
        }
        if let Some(set) = by_first.values().find(|s| s.len() >= 2) {
            let mut it = set.iter();
            let first = it.next().unwrap().1.clone();
            let second = it.next().unwrap().1.clone();
            return Witness { first, second };
        }
    }
    unreachable!("a component that is not a simple cycle carries two distinct bands")
}
