use serde_json::Value;
use stringz::presets::preset_source;
use stringz_web::{analyse_json, hom_json, presets_json, rank_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyse_lam3_reports_chain_and_draws_it() {
    let v = parse(analyse_json(preset_source("lam3").unwrap()).unwrap());
    assert_eq!(v["kg_dimension"], 4);
    assert_eq!(v["n_domestic"], 3);
    assert_eq!(v["bridge_quiver"]["edges"].as_array().unwrap().len(), 4);
    let svg = v["svg"].as_str().unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    assert_eq!(svg.matches("<rect").count(), 6);
    assert_eq!(svg.matches("marker-end").count(), 4);
}

#[test]
fn analyse_non_domestic_has_witness_and_no_drawing() {
    let v = parse(analyse_json(preset_source("gp23").unwrap()).unwrap());
    assert_eq!(v["domestic"], false);
    assert_eq!(v["kg_dimension"], "undefined");
    assert_eq!(v["svg"], "");
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn analyse_lists_axiom_violations() {
    let v = parse(analyse_json(preset_source("x5").unwrap()).unwrap());
    assert!(!v["violations"].as_array().unwrap().is_empty());
    let ok = parse(analyse_json(preset_source("x4").unwrap()).unwrap());
    assert!(ok["violations"].as_array().unwrap().is_empty());
}

#[test]
fn rank_and_errors() {
    let v = parse(rank_json(preset_source("lam3").unwrap(), "adic:[a1 b1-]@x").unwrap());
    assert_eq!(v["rank"], 3);
    assert!(rank_json(preset_source("lam3").unwrap(), "adic:[").is_err());
    assert!(rank_json(preset_source("gp23").unwrap(), "string:[a]").is_err());
    assert!(analyse_json("vertices: 1\n???").is_err());
}

#[test]
fn hom_matches_oracle() {
    let v = parse(hom_json(preset_source("x1").unwrap(), "a g", "a g a-").unwrap());
    assert_eq!(v["count"], v["oracle"]);
}

#[test]
fn presets_are_listed() {
    let v = parse(presets_json());
    assert_eq!(v.as_object().unwrap().len(), 9);
    assert!(v["kron"].as_str().unwrap().contains("algebra"));
}
