//! The JSON analysis report. Field order is fixed by the struct layout, so
//! output is byte-stable for a given input.

use serde::Serialize;

use crate::bands::{is_domestic, Domesticity};
use crate::bridge::bridge_text;
use crate::presentation::StringAlgebra;
use crate::spectrum::{enumerate_points, kg_of, Analysis, Bounds, KgDimension, RankReport, SpectrumError};
use crate::words::letters_text;

#[derive(Clone, Debug, Serialize)]
pub struct BandEntry {
    pub id: usize,
    pub repr: String,
    pub inverse_of: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeEntry {
    pub src: String,
    pub dst: String,
    pub word: String,
    pub flag: crate::bridge::Flag,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverEntry {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub algebra: String,
    pub domestic: bool,
    pub n_domestic: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
    pub bands: Vec<BandEntry>,
    pub bridge_quiver: Option<QuiverEntry>,
    pub kg_dimension: KgDimension,
    pub points: Vec<RankReport>,
}

pub fn quiver_entry(an: &Analysis) -> QuiverEntry {
    let alg = an.alg();
    let name = |c| an.band_text(c);
    QuiverEntry {
        vertices: an.quiver().vertices.iter().map(|&c| name(c)).collect(),
        edges: an
            .quiver()
            .edges
            .iter()
            .map(|e| EdgeEntry {
                src: name(e.source),
                dst: name(e.target),
                word: bridge_text(alg, &e.word),
                flag: e.flag,
            })
            .collect(),
    }
}

/// Full report; `points` is only filled when `bounds` is given.
pub fn build_report(alg: &StringAlgebra, bounds: Option<Bounds>) -> Result<Report, SpectrumError> {
    match is_domestic(alg) {
        Domesticity::NonDomestic(w) => {
            let (a, b) = w.display(alg);
            Ok(Report {
                algebra: alg.name().to_string(),
                domestic: false,
                n_domestic: None,
                witness: Some([a, b]),
                bands: Vec::new(),
                bridge_quiver: None,
                kg_dimension: KgDimension::Undefined,
                points: Vec::new(),
            })
        }
        Domesticity::Domestic(bands) => {
            let an = Analysis::new(alg.clone())?;
            let points = match bounds {
                Some(b) => enumerate_points(&an, b)?,
                None => Vec::new(),
            };
            Ok(Report {
                algebra: alg.name().to_string(),
                domestic: true,
                n_domestic: Some(bands.n_domestic()),
                witness: None,
                bands: bands
                    .classes()
                    .iter()
                    .map(|c| BandEntry { id: c.id, repr: letters_text(alg, &c.repr), inverse_of: c.inverse })
                    .collect(),
                bridge_quiver: Some(quiver_entry(&an)),
                kg_dimension: kg_of(&an)?,
                points,
            })
        }
    }
}
