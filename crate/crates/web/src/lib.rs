//! Browser bindings for the peel demo. Every export takes and returns plain
//! strings; structured results are JSON.

use peelkit::catalog::{self, SolidRecord};
use peelkit::classify::{pattern_classes, PeelabilityVerdict};
use peelkit::peel::{peel_all_pairs, Handedness, PeelConfig};
use peelkit::planar::embed;
use peelkit::unfold::unfold;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct SolidEntry<'a> {
    name: &'a str,
    index: &'a str,
    family: String,
    faces: Vec<usize>,
}

#[derive(Serialize)]
struct PeelView {
    report: peelkit::peel::PeelReport,
    net_svg: String,
    graph_svg: String,
}

#[derive(Serialize)]
struct ClassifyView {
    solid: String,
    verdict: String,
    complete: usize,
    total: usize,
    classes: usize,
}

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn config(handedness: &str) -> Result<PeelConfig, JsValue> {
    let hand = Handedness::parse(handedness)
        .ok_or_else(|| err(format!("unknown handedness `{handedness}`")))?;
    Ok(PeelConfig::with_handedness(hand))
}

fn record(solid: &str) -> Result<&'static SolidRecord, JsValue> {
    catalog::lookup(solid).map_err(err)
}

/// Catalog solids with the gon count of each face.
#[wasm_bindgen]
pub fn solids() -> String {
    let list: Vec<SolidEntry> = catalog::all()
        .iter()
        .map(|r| SolidEntry {
            name: r.name,
            index: &r.index,
            family: r.family.to_string(),
            faces: (0..r.polyhedron.face_count())
                .map(|f| r.polyhedron.gon(f))
                .collect(),
        })
        .collect();
    serde_json::to_string(&list).expect("list serializes")
}

/// Neighbors of face `f`, for choosing the second start face.
#[wasm_bindgen]
pub fn neighbors(solid: &str, f: usize) -> Result<Vec<usize>, JsValue> {
    let p = &record(solid)?.polyhedron;
    if f >= p.face_count() {
        return Err(err(format!("face {f} out of range")));
    }
    Ok(p.adjacency().faces(f).collect())
}

/// Peels `solid` from `(f1, f2)`; returns the report with the net and planar
/// graph drawings.
#[wasm_bindgen]
pub fn peel_solid(solid: &str, f1: usize, f2: usize, handedness: &str) -> Result<String, JsValue> {
    let p = &record(solid)?.polyhedron;
    let seq = peelkit::peel(p, f1, f2, &config(handedness)?).map_err(err)?;
    let view = PeelView {
        report: seq.report(),
        net_svg: unfold(p, &seq).map_err(err)?.to_svg(),
        graph_svg: embed(p, &seq).map_err(err)?.to_svg(),
    };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}

/// Verdict over all start pairs of `solid`.
#[wasm_bindgen]
pub fn classify_solid(solid: &str, handedness: &str) -> Result<String, JsValue> {
    let p = &record(solid)?.polyhedron;
    let cfg = config(handedness)?;
    let runs = peel_all_pairs(p, &cfg).map_err(err)?;
    let v = PeelabilityVerdict::from_runs(p.name().unwrap_or(solid), &runs);
    let view = ClassifyView {
        solid: v.solid,
        verdict: v.verdict.label().to_owned(),
        complete: v.complete,
        total: v.total,
        classes: pattern_classes(p, &runs).len(),
    };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}
