//! Browser bindings. Every export takes strings and returns a JSON string,
//! either a result object or `{"error": "..."}`.

use prsat_core::constructions::{build, canonical_colouring, ConstructionSpec};
use prsat_core::named::parse_graph;
use prsat_core::saturation::{exact_number as exact, SatKind};
use prsat_core::search::{Budget, SearchConfig};
use prsat_core::{graph6, Graph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Searches in the browser are kept small.
const MAX_NODES: u64 = 20_000_000;

fn error(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.edges(), "graph6": graph6::encode(g) })
}

pub fn build_construction_value(spec: &str) -> Value {
    let run = || -> prsat_core::Result<Value> {
        let spec = ConstructionSpec::parse(spec)?;
        let g = build(&spec)?;
        let colours = canonical_colouring(&spec)?.map(|phi| phi.colours().to_vec());
        Ok(json!({
            "graph": graph_json(&g),
            "target": graph6::encode(&spec.target),
            "edge_count": g.m(),
            "colours": colours,
        }))
    };
    run().unwrap_or_else(error)
}

pub fn membership_value(g: &str, h: &str, nodes: u64) -> Value {
    let (g, h) = match (parse_graph(g), parse_graph(h)) {
        (Ok(g), Ok(h)) => (g, h),
        (Err(e), _) | (_, Err(e)) => return error(e),
    };
    let cfg = SearchConfig {
        budget: Budget::with_nodes(nodes.clamp(1, MAX_NODES)),
        ..SearchConfig::default()
    };
    let v = cfg.decide(&g, &h);
    json!({
        "graph": graph_json(&g),
        "status": v.status,
        "mode": v.mode,
        "colours": v.certificate.map(|phi| phi.colours().to_vec()),
        "nodes": v.stats.nodes,
        "reason": v.reason,
    })
}

pub fn exact_number_value(kind: &str, n: usize, h: &str) -> Value {
    let run = || -> prsat_core::Result<Value> {
        let kind: SatKind = kind.parse()?;
        let h = parse_graph(h)?;
        if n > 7 {
            return Err(prsat_core::Error::Precondition("the demo scans n <= 7".into()));
        }
        let res = exact(kind, n, &h, &SearchConfig::default())?;
        let witness = match &res.witness {
            Some(w) => graph_json(&graph6::decode(&w.to_string())?),
            None => Value::Null,
        };
        Ok(json!({ "value": res.value, "exact": res.exact, "witness": witness }))
    };
    run().unwrap_or_else(error)
}

#[wasm_bindgen]
pub fn build_construction(spec: &str) -> String {
    build_construction_value(spec).to_string()
}

#[wasm_bindgen]
pub fn membership(g: &str, h: &str, nodes: f64) -> String {
    membership_value(g, h, nodes as u64).to_string()
}

#[wasm_bindgen]
pub fn exact_number(kind: &str, n: usize, h: &str) -> String {
    exact_number_value(kind, n, h).to_string()
}
