//! Browser bindings. Every entry point is a plain function returning a JSON
//! string (tested natively); the `#[wasm_bindgen]` wrappers only convert
//! errors into JS exceptions.

use grassmann_core::complex::cohomology_with_capacity;
use grassmann_core::qpoly;
use grassmann_core::weights::checkered_fill;
use grassmann_core::{
    homology, is_orientable, BruhatGraph, CohomologyTable, FillVariant, GrassmannShape,
    WeightedLattice,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `n` the page accepts; beyond this the graph is unreadable anyway.
pub const WEB_MAX_N: usize = 12;

fn shape(k: usize, n: usize) -> Result<GrassmannShape, String> {
    let s = GrassmannShape::new(k, n).map_err(|e| e.to_string())?;
    s.check_capacity(WEB_MAX_N).map_err(|e| e.to_string())?;
    Ok(s)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Node {
    id: usize,
    degree: usize,
    /// Bottom row first.
    partition: Vec<usize>,
    label: String,
    weight: usize,
    /// One string per row, bottom row first, over the alphabet `{q, 1}`.
    letters: Vec<String>,
}

#[derive(Serialize)]
struct Edge {
    source: usize,
    target: usize,
    reflection: usize,
    double: bool,
}

#[derive(Serialize)]
struct GraphView {
    k: usize,
    n: usize,
    variant: &'static str,
    levels: Vec<Vec<usize>>,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

/// Weighted Bruhat graph for `variant` in `{"standard", "shifted"}`.
pub fn graph_view(k: usize, n: usize, variant: &str) -> Result<String, String> {
    let s = shape(k, n)?;
    let v = match variant {
        "standard" => FillVariant::Standard,
        "shifted" => FillVariant::Shifted,
        other => return Err(format!("unknown variant {other:?}")),
    };
    let graph = BruhatGraph::build_with_capacity(s, WEB_MAX_N).map_err(|e| e.to_string())?;
    let lattice = WeightedLattice::new(graph, v).map_err(|e| e.to_string())?;
    let g = lattice.graph();
    let mut nodes = Vec::with_capacity(g.cells().len());
    for (id, p) in g.cells().iter().enumerate() {
        let fill = checkered_fill(p, s, v).map_err(|e| e.to_string())?;
        nodes.push(Node {
            id,
            degree: p.size(),
            partition: p.rows().to_vec(),
            label: p.to_string(),
            weight: lattice.weight(id),
            letters: fill
                .letters
                .iter()
                .map(|row| row.iter().map(|l| l.to_string()).collect())
                .collect(),
        });
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| Edge {
            source: e.source,
            target: e.target,
            reflection: e.reflection_index(),
            double: lattice.is_double(i),
        })
        .collect();
    let levels = (0..g.level_count())
        .map(|d| g.level_range(d).collect())
        .collect();
    to_json(&GraphView {
        k,
        n,
        variant: v.name(),
        levels,
        nodes,
        edges,
    })
}

#[derive(Serialize)]
struct CohomologyView {
    constant: Vec<String>,
    twisted: Vec<String>,
    homology: Vec<String>,
    orientable: bool,
}

fn displays(t: &CohomologyTable) -> Vec<String> {
    t.groups.iter().map(|g| g.to_string()).collect()
}

/// Cohomology in both coefficient systems plus integral homology.
pub fn cohomology_view(k: usize, n: usize) -> Result<String, String> {
    let s = shape(k, n)?;
    let get = |v| cohomology_with_capacity(s, v, WEB_MAX_N).map_err(|e| e.to_string());
    to_json(&CohomologyView {
        constant: displays(&get(FillVariant::Standard)?),
        twisted: displays(&get(FillVariant::Shifted)?),
        homology: displays(&homology(s).map_err(|e| e.to_string())?),
        orientable: is_orientable(s).map_err(|e| e.to_string())?,
    })
}

#[derive(Serialize)]
struct PolynomialView {
    p: String,
    p_star: String,
    poincare: String,
    euler_characteristic: i64,
    point_count: String,
    reciprocity: bool,
}

/// `p(q)`, `p*(q)`, Poincaré polynomial, Euler characteristic, point count.
pub fn polynomials_view(k: usize, n: usize) -> Result<String, String> {
    let s = shape(k, n)?;
    let err = |e: grassmann_core::Error| e.to_string();
    let count = qpoly::fq_point_count(s).map_err(err)?;
    to_json(&PolynomialView {
        p: qpoly::p_closed(s).map_err(err)?.display_in("q"),
        p_star: qpoly::p_sum(s, FillVariant::Shifted)
            .map_err(err)?
            .display_in("q"),
        poincare: qpoly::poincare_polynomial(s).map_err(err)?.display_in("t"),
        euler_characteristic: qpoly::euler_characteristic(s).map_err(err)?,
        point_count: count.full().display_in("q"),
        reciprocity: qpoly::reciprocity_check(s).map_err(err)?,
    })
}

#[wasm_bindgen(js_name = graphView)]
pub fn graph_view_js(k: usize, n: usize, variant: &str) -> Result<String, JsError> {
    graph_view(k, n, variant).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = cohomologyView)]
pub fn cohomology_view_js(k: usize, n: usize) -> Result<String, JsError> {
    cohomology_view(k, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = polynomialsView)]
pub fn polynomials_view_js(k: usize, n: usize) -> Result<String, JsError> {
    polynomials_view(k, n).map_err(|e| JsError::new(&e))
}
