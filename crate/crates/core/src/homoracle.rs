//! Explicit matrix representations of string and band modules, and an exact
//! Hom-dimension oracle that is independent of the combinatorial basis of
//! graph maps.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bands::{BandSet, ClassId};
use crate::presentation::StringAlgebra;
use crate::words::{invert_letters, Word};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("band parameter must be nonzero")]
    ZeroParameter,
    #[error("band size must be at least 1")]
    ZeroSize,
}

/// Dense `rows × cols` matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for k in c..cols {
                let v = &rows[i][k] - &f * &rows[r][k];
                rows[i][k] = v;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// A representation: a space per vertex and a matrix per arrow, mapping
/// the source space to the target space.
#[derive(Clone, Debug)]
pub struct ExplicitModule {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl ExplicitModule {
    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Every relation acts as zero.
    pub fn satisfies_relations(&self, alg: &StringAlgebra) -> bool {
        alg.presentation().relations.iter().all(|r| {
            let mut m = self.maps[r[0]].clone();
            for &a in &r[1..] {
                m = m.mul(&self.maps[a]);
            }
            m.is_zero()
        })
    }
}

/// Basis vector `e_i` lives at vertex position `i` of `w`. A direct letter
/// `a` between positions `i-1` and `i` sends `e_i` to `e_{i-1}`; an inverse
/// letter sends `e_{i-1}` to `e_i`.
pub fn build_string_module(alg: &StringAlgebra, w: &Word) -> ExplicitModule {
    let verts = w.vertices(alg);
    let mut dims = vec![0; alg.num_vertices()];
    let local: Vec<usize> = verts
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let mut maps: Vec<Matrix> = (0..alg.num_arrows())
        .map(|a| Matrix::zeros(dims[alg.arrow(a).target], dims[alg.arrow(a).source]))
        .collect();
    for (i, l) in w.letters().iter().enumerate() {
        let (from, to) = if l.inverse { (i, i + 1) } else { (i + 1, i) };
        maps[l.arrow].set(local[to], local[from], Q::one());
    }
    ExplicitModule { dims, maps }
}

/// The band module of `class` with an `n × n` Jordan block for `lambda`,
/// placed on the last letter of the representative.
pub fn build_band_module(
    alg: &StringAlgebra,
    bands: &BandSet,
    class: ClassId,
    lambda: i64,
    n: usize,
) -> Result<ExplicitModule, HomError> {
    if lambda == 0 {
        return Err(HomError::ZeroParameter);
    }
    if n == 0 {
        return Err(HomError::ZeroSize);
    }
    let b = bands.repr(class);
    let p = b.len();
    // vertex position i (mod p) sits left of letter i
    let verts: Vec<usize> = b.iter().map(|&l| alg.left(l)).collect();
    let mut dims = vec![0; alg.num_vertices()];
    let block: Vec<usize> = verts
        .iter()
        .map(|&v| {
            dims[v] += n;
            dims[v] - n
        })
        .collect();
    let mut maps: Vec<Matrix> = (0..alg.num_arrows())
        .map(|a| Matrix::zeros(dims[alg.arrow(a).target], dims[alg.arrow(a).source]))
        .collect();
    let lam = Q::from_integer(BigInt::from(lambda));
    for (i, l) in b.iter().enumerate() {
        let (x, y) = (i, (i + 1) % p);
        let (from, to) = if l.inverse { (x, y) } else { (y, x) };
        for k in 0..n {
            if i + 1 == p {
                maps[l.arrow].set(block[to] + k, block[from] + k, lam.clone());
                if k + 1 < n {
                    maps[l.arrow].set(block[to] + k, block[from] + k + 1, Q::one());
                }
            } else {
                maps[l.arrow].set(block[to] + k, block[from] + k, Q::one());
            }
        }
    }
    Ok(ExplicitModule { dims, maps })
}

/// `dim Hom(a, b)`: unknowns `f_v` with `f_t · a_α = b_α · f_s` per arrow.
pub fn hom_dim_oracle(alg: &StringAlgebra, a: &ExplicitModule, b: &ExplicitModule) -> usize {
    let nv = alg.num_vertices();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + b.dims[v] * a.dims[v];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return 0;
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * a.dims[v] + c;
    let mut rows = Vec::new();
    for arrow in 0..alg.num_arrows() {
        let (s, t) = (alg.arrow(arrow).source, alg.arrow(arrow).target);
        let (am, bm) = (&a.maps[arrow], &b.maps[arrow]);
        for r in 0..b.dims[t] {
            for c in 0..a.dims[s] {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..a.dims[t] {
                    row[var(t, r, k)] += am.get(k, c);
                }
                for k in 0..b.dims[s] {
                    row[var(s, k, c)] -= bm.get(r, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    unknowns - rank(rows)
}

/// A graph map `M(u) → M(v)`: a factor substring of `u` at `factor_at`
/// identified with an image substring of `v` at `image_at`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    pub factor_at: usize,
    pub len: usize,
    pub image_at: usize,
    pub inverted: bool,
}

fn closed(w: &Word, i: usize, j: usize, image: bool) -> bool {
    let l = w.letters();
    let left = (i > 0).then(|| l[i - 1]);
    let right = (j < l.len()).then(|| l[j]);
    if image {
        left.is_none_or(|x| x.inverse) && right.is_none_or(|x| !x.inverse)
    } else {
        left.is_none_or(|x| !x.inverse) && right.is_none_or(|x| x.inverse)
    }
}

/// Graph maps between finite string modules, counted directly from the
/// words.
pub fn graph_maps(alg: &StringAlgebra, u: &Word, v: &Word) -> Vec<GraphMap> {
    let (uv, vv) = (u.vertices(alg), v.vertices(alg));
    let (ul, vl) = (u.letters(), v.letters());
    let mut out = Vec::new();
    for i in 0..=ul.len() {
        for j in i..=ul.len() {
            if !closed(u, i, j, false) {
                continue;
            }
            let d = &ul[i..j];
            let di = invert_letters(d);
            for x in 0..=vl.len() {
                let y = x + d.len();
                if y > vl.len() || !closed(v, x, y, true) {
                    continue;
                }
                if d.is_empty() {
                    if uv[i] == vv[x] {
                        out.push(GraphMap { factor_at: i, len: 0, image_at: x, inverted: false });
                    }
                    continue;
                }
                for (pat, inverted) in [(d, false), (di.as_slice(), true)] {
                    if &vl[x..y] == pat {
                        out.push(GraphMap { factor_at: i, len: d.len(), image_at: x, inverted });
                    }
                }
            }
        }
    }
    out
}

pub fn graph_map_count(alg: &StringAlgebra, u: &Word, v: &Word) -> usize {
    graph_maps(alg, u, v).len()
}
