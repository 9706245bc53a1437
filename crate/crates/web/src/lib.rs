//! Browser bindings: subdivision drawing, the (HRC) check and the sd² shelling.
//!
//! Every export takes a facet list (same text format as the CLI) and an
//! optional JSON object of 2D vertex positions, and returns JSON. Vertices
//! without a position are placed on a circle. Vertices of a subdivision sit at
//! the barycentres of their faces.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use stardecomp::collapse::{check_hrc, HrcVerdict};
use stardecomp::pipeline::{shell_sd2, PipelineOutcome};
use stardecomp::{sd, Complex, Face, Vertex};

type Points = BTreeMap<Vertex, [f64; 2]>;

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct Drawing {
    /// Position per vertex id.
    pub points: BTreeMap<Vertex, [f64; 2]>,
    pub labels: BTreeMap<Vertex, String>,
    pub edges: Vec<[Vertex; 2]>,
    pub triangles: Vec<[Vertex; 3]>,
}

fn parse_points(json: &str) -> Result<Points, String> {
    if json.trim().is_empty() {
        return Ok(Points::new());
    }
    let raw: BTreeMap<String, [f64; 2]> = serde_json::from_str(json).map_err(|e| e.to_string())?;
    raw.into_iter()
        .map(|(k, p)| k.parse().map(|v| (v, p)).map_err(|_| format!("bad vertex id {k:?}")))
        .collect()
}

fn place(k: &Complex, given: &Points) -> Points {
    let vs = k.vertices();
    let n = vs.len().max(1) as f64;
    vs.iter()
        .enumerate()
        .map(|(i, &v)| {
            let p = given.get(&v).copied().unwrap_or_else(|| {
                let a = TAU * i as f64 / n - TAU / 4.0;
                [a.cos(), a.sin()]
            });
            (v, p)
        })
        .collect()
}

fn barycentre(face: &Face, points: &Points) -> [f64; 2] {
    let n = face.len().max(1) as f64;
    let (x, y) = face
        .vertices()
        .iter()
        .fold((0.0, 0.0), |(x, y), v| (x + points[v][0], y + points[v][1]));
    [x / n, y / n]
}

fn drawing(k: &Complex, points: Points, labels: BTreeMap<Vertex, String>) -> Drawing {
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for f in k.faces() {
        match f.vertices() {
            [a, b] => edges.push([*a, *b]),
            [a, b, c] => triangles.push([*a, *b, *c]),
            _ => {}
        }
    }
    Drawing {
        points,
        labels,
        edges,
        triangles,
    }
}

/// `(complex, positions, labels)` after `level` subdivisions.
fn subdivide(k: &Complex, points: Points, level: u32) -> (Complex, Points, BTreeMap<Vertex, String>) {
    let mut labels: BTreeMap<Vertex, String> = k.vertices().iter().map(|v| (*v, v.to_string())).collect();
    let (mut k, mut points) = (k.clone(), points);
    for _ in 0..level {
        let s = sd(&k);
        let new_points = s.labeling().map(|(v, f)| (v, barycentre(f, &points))).collect();
        labels = s
            .labeling()
            .map(|(v, f)| {
                let parts: Vec<&str> = f.vertices().iter().map(|u| labels[u].as_str()).collect();
                (v, format!("{{{}}}", parts.join(",")))
            })
            .collect();
        k = s.complex;
        points = new_points;
    }
    (k, points, labels)
}

fn check_dim(k: &Complex) -> Result<(), String> {
    match k.dim().finite() {
        Some(d) if (0..=2).contains(&d) => Ok(()),
        _ => Err("the demo draws complexes of dimension 0, 1 or 2".into()),
    }
}

pub fn sd_drawing(text: &str, positions: &str, level: u32) -> Result<String, String> {
    let k = Complex::parse(text).map_err(|e| e.to_string())?;
    check_dim(&k)?;
    let points = place(&k, &parse_points(positions)?);
    let (k, points, labels) = subdivide(&k, points, level.min(2));
    Ok(serde_json::to_string(&drawing(&k, points, labels)).expect("serializable"))
}

pub fn hrc(text: &str, budget: u64) -> Result<String, String> {
    let k = Complex::parse(text).map_err(|e| e.to_string())?;
    let v = check_hrc(&k, budget).map_err(|e| e.to_string())?;
    let summary = match &v {
        HrcVerdict::Certified { certificate } => serde_json::json!({
            "result": "certified",
            "faces": certificate.per_face.len(),
            "certificate": certificate,
        }),
        other => serde_json::to_value(other).expect("serializable"),
    };
    Ok(summary.to_string())
}

#[derive(Serialize)]
struct Animation {
    drawing: Drawing,
    /// Facets of `sd² K` in shelling order.
    order: Vec<Vec<Vertex>>,
    stats: serde_json::Value,
}

pub fn shelling(text: &str, positions: &str, budget: u64) -> Result<String, String> {
    let k = Complex::parse(text).map_err(|e| e.to_string())?;
    check_dim(&k)?;
    let outcome = shell_sd2(&k, budget).map_err(|e| e.to_string())?;
    let report = match outcome {
        PipelineOutcome::Shelled { report } => report,
        other => return Ok(serde_json::to_string(&other).expect("serializable")),
    };
    let points = place(&k, &parse_points(positions)?);
    let (k2, points, labels) = subdivide(&k, points, 2);
    // The pipeline numbers sd² the same way, since both call `sd` twice.
    let anim = Animation {
        drawing: drawing(&k2, points, labels),
        order: report
            .shelling
            .facets
            .iter()
            .map(|f| f.vertices().to_vec())
            .collect(),
        stats: serde_json::to_value(&report.stats).expect("serializable"),
    };
    Ok(serde_json::json!({ "result": "shelled", "animation": anim }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// JSON drawing of `sd^level K` (level 0, 1 or 2).
#[wasm_bindgen(js_name = sdDrawing)]
pub fn sd_drawing_js(text: &str, positions: &str, level: u32) -> Result<String, JsValue> {
    js(sd_drawing(text, positions, level))
}

#[wasm_bindgen(js_name = checkHrc)]
pub fn hrc_js(text: &str, budget: u32) -> Result<String, JsValue> {
    js(hrc(text, budget as u64))
}

/// Drawing of `sd² K` plus its verified shelling order.
#[wasm_bindgen(js_name = shellSd2)]
pub fn shelling_js(text: &str, positions: &str, budget: u32) -> Result<String, JsValue> {
    js(shelling(text, positions, budget as u64))
}
