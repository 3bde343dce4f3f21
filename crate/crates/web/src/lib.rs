//! Browser bindings. Every export takes plain strings or numbers and returns
//! a JSON string, either a result object or `{"error": "..."}`.

use curvecount::fit::{fit_nodes, FitProblem};
use curvecount::germ::{ideal_in_jets, Analyzer, GermPoly, InvariantReport};
use curvecount::series::ChernVector;
use curvecount::severi::{Degree, SeveriEngine, SeveriError};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Keeps page interactions fast on a single thread.
pub const DEMO_DEGREE_LIMIT: u32 = 10;
pub const DEMO_NODE_LIMIT: u32 = 8;
pub const DEMO_JET_CEILING: u32 = 32;
pub const DEMO_MAX_R: u32 = 6;

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string()),
        Err(message) => json!({ "error": message }).to_string(),
    }
}

#[derive(Serialize)]
struct GermView {
    report: InvariantReport,
    /// Monomials `[i, j]` spanning the Milnor and Tjurina algebras.
    milnor_basis: Vec<(u32, u32)>,
    tjurina_basis: Vec<(u32, u32)>,
}

fn germ_view(expr: &str) -> Result<GermView, String> {
    let f: GermPoly = expr.parse().map_err(|e: curvecount::germ::GermError| e.to_string())?;
    let lab = Analyzer::with_ceiling(DEMO_JET_CEILING);
    let report = lab.analyze(&f, None).map_err(|e| e.to_string())?;
    let (fx, fy) = (f.partial_x(), f.partial_y());
    let milnor = ideal_in_jets(&[fx.clone(), fy.clone()], None, report.milnor_stabilization);
    let tjurina = ideal_in_jets(&[f.clone(), fx, fy], None, report.tjurina_stabilization);
    Ok(GermView { milnor_basis: milnor.quotient_monomials(), tjurina_basis: tjurina.quotient_monomials(), report })
}

/// Invariants of a germ plus the standard monomials of its local algebras.
#[wasm_bindgen]
pub fn analyze_germ(expr: &str) -> String {
    respond(germ_view(expr))
}

#[derive(Serialize)]
struct SeveriRow {
    degree: String,
    /// Counts for 0, 1, ... nodes; `null` past the largest possible node count.
    counts: Vec<Option<String>>,
}

fn severi_rows(surface: &str, max_degree: u32, max_nodes: u32) -> Result<Vec<SeveriRow>, String> {
    if max_degree == 0 || max_degree > DEMO_DEGREE_LIMIT || max_nodes > DEMO_NODE_LIMIT {
        return Err(format!("choose degrees 1..={DEMO_DEGREE_LIMIT} and at most {DEMO_NODE_LIMIT} nodes"));
    }
    let degrees: Vec<Degree> = match surface {
        "P2" | "p2" => (1..=max_degree).map(Degree::Plane).collect(),
        "P1xP1" | "p1xp1" => {
            (1..=max_degree).flat_map(|a| (a..=max_degree).map(move |b| Degree::Quadric(a, b))).collect()
        }
        other => return Err(format!("unknown surface '{other}' (use P2 or P1xP1)")),
    };
    let engine = SeveriEngine::with_ceiling(DEMO_DEGREE_LIMIT);
    degrees
        .into_iter()
        .map(|degree| {
            let counts = (0..=max_nodes)
                .map(|delta| match engine.severi(degree, delta) {
                    Ok(v) => Ok(Some(v.to_string())),
                    Err(SeveriError::Inadmissible { .. }) => Ok(None),
                    Err(e) => Err(e.to_string()),
                })
                .collect::<Result<_, _>>()?;
            Ok(SeveriRow { degree: degree.to_string(), counts })
        })
        .collect()
}

/// Severi degrees for every degree up to `max_degree` (every bidegree
/// `a <= b` on `P1xP1`) and node counts `0..=max_nodes`.
#[wasm_bindgen]
pub fn severi_table(surface: &str, max_degree: u32, max_nodes: u32) -> String {
    respond(severi_rows(surface, max_degree, max_nodes))
}

fn node_view(max_r: u32, chern: &str) -> Result<serde_json::Value, String> {
    if max_r > DEMO_MAX_R {
        return Err(format!("choose at most {DEMO_MAX_R} nodes"));
    }
    let engine = SeveriEngine::new();
    let quadrics: Vec<(u32, u32)> = (1..=max_r + 2).flat_map(|a| (1..=max_r + 2).map(move |b| (a, b))).collect();
    let problem = FitProblem::new(max_r, (3..=12).collect(), quadrics);
    let fit = fit_nodes(&engine, &problem).map_err(|e| e.to_string())?;
    let mut view = serde_json::to_value(fit.to_json()).map_err(|e| e.to_string())?;
    if !chern.trim().is_empty() {
        let v: ChernVector = chern.parse().map_err(|e: curvecount::series::SeriesError| e.to_string())?;
        let values: Vec<String> = (0..=max_r).map(|r| fit.t[&r].eval(&v).to_string()).collect();
        view["values"] = json!({ "chern": v.to_string(), "T": values });
    }
    Ok(view)
}

/// Fits the node polynomials `T_0..T_max_r` and evaluates them at an optional
/// Chern vector `"L^2,LK,c1^2,c2"`.
#[wasm_bindgen]
pub fn node_polynomials(max_r: u32, chern: &str) -> String {
    respond(node_view(max_r, chern))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_are_json() {
        let v: serde_json::Value = serde_json::from_str(&analyze_germ("x*y+1")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("constant term"));
        let v: serde_json::Value = serde_json::from_str(&severi_table("P3", 3, 1)).unwrap();
        assert!(v["error"].is_string());
    }
}
