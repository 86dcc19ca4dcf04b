//! Browser bindings for the static demo in `www/`.
//!
//! Every export takes the algebra as source text and returns JSON. The
//! `*_json` functions hold the logic so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use stringz::homoracle::{build_string_module, graph_maps, hom_dim_oracle};
use stringz::presets::PRESETS;
use stringz::report::{build_report, Report};
use stringz::spectrum::{cb_rank, parse_point, Analysis};
use stringz::words::{letters_text, parse_finite};
use stringz::{parse_presentation, BridgeQuiver, StringAlgebra};
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Analysed {
    #[serde(flatten)]
    report: Report,
    violations: Vec<String>,
    /// Empty when the algebra is not domestic.
    svg: String,
}

#[derive(Serialize)]
struct HomResult {
    count: usize,
    mediators: Vec<String>,
    oracle: usize,
}

fn algebra(src: &str) -> Result<StringAlgebra, String> {
    let p = parse_presentation(src).map_err(|e| e.to_string())?;
    Ok(StringAlgebra::new_unchecked(p))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("results serialise")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const COL: f64 = 190.0;
const ROW: f64 = 70.0;

/// Layered drawing: a band sits in the column of the longest path ending at
/// it, so every edge points rightwards.
pub fn quiver_svg(an: &Analysis) -> String {
    let q: &BridgeQuiver = an.quiver();
    let mut depth: BTreeMap<usize, usize> = q.vertices.iter().map(|&v| (v, 0)).collect();
    // the quiver is acyclic, so |V| relaxation rounds reach the fixpoint
    for _ in 0..q.vertices.len() {
        for e in &q.edges {
            let d = depth[&e.source] + 1;
            if depth[&e.target] < d {
                depth.insert(e.target, d);
            }
        }
    }
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    let pos: BTreeMap<usize, (f64, f64)> = q
        .vertices
        .iter()
        .map(|&v| {
            let col = depth[&v];
            let row = rows.entry(col).or_insert(0);
            *row += 1;
            (v, (20.0 + col as f64 * COL, 30.0 + (*row - 1) as f64 * ROW))
        })
        .collect();
    let width = 20.0 + (rows.keys().max().map_or(0, |c| c + 1)) as f64 * COL;
    let height = 20.0 + rows.values().max().copied().unwrap_or(0) as f64 * ROW;

    let mut s = String::new();
    let _ = write!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="12">"#
    );
    s.push_str(r#"<defs><marker id="tip" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#);
    for (i, e) in q.edges.iter().enumerate() {
        let (x1, y1) = pos[&e.source];
        let (x2, y2) = pos[&e.target];
        let dash = match e.flag {
            stringz::Flag::Ascending => "",
            stringz::Flag::Descending => r#" stroke-dasharray="5,4""#,
        };
        // parallel edges between the same pair bend apart
        let bend = 18.0 * (i % 3) as f64;
        let (sx, sy, tx, ty) = (x1 + 130.0, y1, x2, y2);
        let (mx, my) = ((sx + tx) / 2.0, (sy + ty) / 2.0 - bend);
        let _ = write!(
            s,
            r##"<path d="M{sx},{sy} Q{mx},{my} {tx},{ty}" fill="none" stroke="black" marker-end="url(#tip)"{dash}/><text x="{mx}" y="{}" text-anchor="middle" fill="#555">{}</text>"##,
            my - 4.0,
            escape(&stringz::bridge::bridge_text(an.alg(), &e.word))
        );
    }
    for (&v, &(x, y)) in &pos {
        let _ = write!(
            s,
            r##"<rect x="{x}" y="{}" width="130" height="22" rx="4" fill="#eef" stroke="#336"/><text x="{}" y="{}" text-anchor="middle">{}</text>"##,
            y - 11.0,
            x + 65.0,
            y + 4.0,
            escape(&an.band_text(v))
        );
    }
    s.push_str("</svg>");
    s
}

/// Bands, domesticity, bridge quiver, KG dimension and a quiver drawing.
pub fn analyse_json(src: &str) -> Result<String, String> {
    let alg = algebra(src)?;
    let violations = alg.violations().iter().map(ToString::to_string).collect();
    let report = build_report(&alg, None).map_err(|e| e.to_string())?;
    let svg = if report.domestic {
        Analysis::new(alg).map(|an| quiver_svg(&an)).map_err(|e| e.to_string())?
    } else {
        String::new()
    };
    Ok(to_json(&Analysed { report, violations, svg }))
}

/// Rank report of one point expression.
pub fn rank_json(src: &str, expr: &str) -> Result<String, String> {
    let an = Analysis::new(algebra(src)?).map_err(|e| e.to_string())?;
    let pt = parse_point(&an, expr).map_err(|e| e.to_string())?;
    cb_rank(&an, &pt).map(|r| to_json(&r)).map_err(|e| e.to_string())
}

/// Graph maps between two finite strings, with the oracle dimension.
pub fn hom_json(src: &str, from: &str, to: &str) -> Result<String, String> {
    let alg = algebra(src)?;
    let u = parse_finite(&alg, from).map_err(|e| e.to_string())?;
    let v = parse_finite(&alg, to).map_err(|e| e.to_string())?;
    let maps = graph_maps(&alg, &u, &v);
    let mediators = maps
        .iter()
        .map(|m| {
            if m.len == 0 {
                format!("1@{}", alg.vertex_name(u.vertices(&alg)[m.factor_at]))
            } else {
                letters_text(&alg, &u.letters()[m.factor_at..m.factor_at + m.len])
            }
        })
        .collect();
    let oracle = hom_dim_oracle(&alg, &build_string_module(&alg, &u), &build_string_module(&alg, &v));
    Ok(to_json(&HomResult { count: maps.len(), mediators, oracle }))
}

/// `{name: source}` for the bundled presets.
pub fn presets_json() -> String {
    let m: BTreeMap<&str, &str> = PRESETS.iter().copied().collect();
    to_json(&m)
}

#[wasm_bindgen]
pub fn analyse(src: &str) -> Result<String, JsError> {
    analyse_json(src).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rank(src: &str, expr: &str) -> Result<String, JsError> {
    rank_json(src, expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hom(src: &str, from: &str, to: &str) -> Result<String, JsError> {
    hom_json(src, from, to).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn presets() -> String {
    presets_json()
}
