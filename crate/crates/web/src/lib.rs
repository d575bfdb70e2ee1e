//! Browser bindings: each export takes an edge list and returns a JSON string.

use cck_core::cert::{Certificate, CertificateBody, GraphJson, PatternJson};
use cck_core::cluster::{cluster_colour_graph, ClusterParams, GraphOutcome};
use cck_core::fractional::{defect_lp_lower, Rational};
use cck_core::generators::{closure_graph, weak_closure_graph};
use cck_core::graph::parse_edge_list;
use cck_core::pathwidth::{exact_pathwidth, two_colour};
use cck_core::{Bound, Graph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn graph(edges: &str) -> Result<Graph, String> {
    parse_edge_list(edges).map_err(|e| e.to_string())
}

fn merge(cert: &Certificate, extra: Value) -> String {
    let mut v = serde_json::to_value(cert).expect("certificate serializes");
    if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
        obj.extend(more);
    }
    v.to_string()
}

/// Edge list of the closure (`weak == false`) or weak closure of the k-ary tree.
pub fn generate_text(weak: bool, h: usize, k: usize) -> Result<String, String> {
    let g = if weak { weak_closure_graph(h, k) } else { closure_graph(h, k) };
    g.map(|g| g.to_edge_list()).map_err(|e| e.to_string())
}

pub fn cluster_colour_json(edges: &str, h: usize, k: usize) -> Result<String, String> {
    let g = graph(edges)?;
    let out = cluster_colour_graph(&g, ClusterParams::new(h, k)).map_err(|e| e.to_string())?;
    Ok(match out {
        GraphOutcome::Colouring(c) => {
            let cert = Certificate::new(CertificateBody::Colouring {
                colouring: c.colouring.clone(),
                bound: Bound::Clustering(c.max_cluster),
                max_colours: Some(h.saturating_sub(1)),
            });
            merge(&cert, json!({ "colours": c.colouring.colour_count(), "max_cluster": c.max_cluster }))
        }
        GraphOutcome::Minor(m) => {
            let named = weak_closure_graph(h, k).map_err(|e| e.to_string())?;
            let pattern = if m.model.pattern == named {
                PatternJson::weak_closure(h, k)
            } else {
                PatternJson::Graph(GraphJson::from(&m.model.pattern))
            };
            serde_json::to_string(&Certificate::minor_named(&m.model, pattern)).expect("certificate serializes")
        }
    })
}

pub fn path_colour_json(edges: &str) -> Result<String, String> {
    let g = graph(edges)?;
    let (_, pd) = exact_pathwidth(&g).map_err(|e| e.to_string())?;
    let col = two_colour(&g, &pd).map_err(|e| e.to_string())?;
    let cert = Certificate::new(CertificateBody::PathColouring {
        colouring: col.colouring.clone(),
        max_path: col.path_bound() as usize,
    });
    Ok(merge(&cert, json!({ "width": col.width, "bags": pd.bags() })))
}

pub fn lp_lower_json(edges: &str, d: usize) -> Result<String, String> {
    let g = graph(edges)?;
    let sol = defect_lp_lower(&g, d).map_err(|e| e.to_string())?;
    let cert = Certificate::new(CertificateBody::Fractional(sol.to_fractional(Bound::Defect(d))));
    Ok(merge(&cert, json!({ "lp": Rational(sol.value) })))
}

#[wasm_bindgen]
pub fn generate(weak: bool, h: usize, k: usize) -> Result<String, JsError> {
    generate_text(weak, h, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = clusterColour)]
pub fn cluster_colour(edges: &str, h: usize, k: usize) -> Result<String, JsError> {
    cluster_colour_json(edges, h, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = pathColour)]
pub fn path_colour(edges: &str) -> Result<String, JsError> {
    path_colour_json(edges).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = lpLower)]
pub fn lp_lower(edges: &str, d: usize) -> Result<String, JsError> {
    lp_lower_json(edges, d).map_err(|e| JsError::new(&e))
}
