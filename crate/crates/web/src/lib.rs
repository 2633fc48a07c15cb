//! Browser bindings: each call takes an instance as JSON text and returns JSON text.

use serde_json::json;
use wasm_bindgen::prelude::*;

use cayley_compact::cayley::BallIndex;
use cayley_compact::harness::{cmd_boundary, hull_report, parse_instance, parse_weight, Options, Route};

const BALL_NODE_BUDGET: usize = 200_000;

pub fn hull_json(instance: &str) -> Result<String, String> {
    let (inst, _) = parse_instance(instance).map_err(|e| e.to_string())?;
    let report = hull_report(&inst).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string_pretty(&report).expect("plain data serializes"))
}

pub fn boundary_json(instance: &str, route: &str, perturb: Option<u32>) -> Result<String, String> {
    let (inst, _) = parse_instance(instance).map_err(|e| e.to_string())?;
    let route = match route {
        "geo" => Route::Geometric,
        "alg" => Route::Algebraic,
        "both" => Route::Both,
        other => return Err(format!("unknown route {other:?}")),
    };
    let opts = Options { perturb: perturb.map(u64::from), ..Options::default() };
    cmd_boundary(&inst, route, &opts).map(|r| r.to_json()).map_err(|e| e.to_string())
}

/// Elements of the ball with their distances, nearest first.
pub fn ball_json(instance: &str, radius: &str) -> Result<String, String> {
    let (inst, _) = parse_instance(instance).map_err(|e| e.to_string())?;
    let radius = parse_weight(radius).ok_or_else(|| format!("radius {radius:?} is not a number"))?;
    let graph = inst.graph();
    let ball = BallIndex::build(&graph, &radius, BALL_NODE_BUDGET).map_err(|e| e.to_string())?;
    let mut elements = ball.elements();
    elements.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let rows: Vec<_> = elements
        .into_iter()
        .map(|(e, d)| json!({"element": e, "distance": graph.to_rational(d as i128).to_string()}))
        .collect();
    Ok(json!({"rank": graph.rank(), "radius": radius.to_string(), "elements": rows}).to_string())
}

#[wasm_bindgen]
pub fn hull(instance: &str) -> Result<String, JsError> {
    hull_json(instance).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn boundary(instance: &str, route: &str, perturb: Option<u32>) -> Result<String, JsError> {
    boundary_json(instance, route, perturb).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ball(instance: &str, radius: &str) -> Result<String, JsError> {
    ball_json(instance, radius).map_err(|e| JsError::new(&e))
}
