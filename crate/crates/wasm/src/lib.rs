//! Browser bindings for the demo page: three operations over JSON strings.
//!
//! Everything runs synchronously inside the wasm module; complexes travel as
//! the same canonical JSON the CLI emits, so results can be pasted between
//! the two.

use wasm_bindgen::prelude::wasm_bindgen;

use flagsphere::catalog::{parse_build_spec, NoFiles};
use flagsphere::cm::certify_sphere;
use flagsphere::complex::{Face, SimplicialComplex, VertexId};
use flagsphere::decomposition::{
    iterated_gamma_decomposition, summarize, DecompOptions, EdgeStrategy,
};
use flagsphere::moves::edge_subdivide;
use flagsphere::search::Budget;
use flagsphere::vectors::{dehn_sommerville_check, gamma_vector, h_polynomial};
use serde_json::json;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn analyze_value(
    complex: &SimplicialComplex,
    provenance_steps: Option<Vec<String>>,
) -> Result<serde_json::Value, String> {
    let dim = complex.dimension().ok_or("void complex")?;
    let d = (dim + 1) as usize;
    let f = complex.f_vector().map_err(err)?;
    let h = h_polynomial(complex).map_err(err)?;
    let ds = dehn_sommerville_check(complex).map_err(err)?;
    let gamma = if ds { gamma_vector(&h, d).ok() } else { None };
    let witness = complex.flag_witness();
    Ok(json!({
        "complex": complex,
        "dimension": dim,
        "vertices": complex.vertex_count(),
        "f": f,
        "h": h,
        "h_display": h.to_string(),
        "dehn_sommerville": ds,
        "gamma": gamma,
        "flag": witness.is_none(),
        "flag_witness": witness,
        "edges": complex.edges(),
        "provenance": provenance_steps,
    }))
}

/// Build a complex from a spec like "susp(cycle(6))" and report its vectors.
#[wasm_bindgen]
pub fn analyze(spec: &str) -> Result<String, String> {
    let built = parse_build_spec(spec, &NoFiles).map_err(err)?;
    let mut value = analyze_value(
        &built.complex,
        built.provenance.as_ref().map(|p| p.steps().to_vec()),
    )?;
    let status = certify_sphere(&built.complex, built.provenance.as_ref());
    value["sphere"] = serde_json::to_value(status).map_err(err)?;
    serde_json::to_string(&value).map_err(err)
}

/// Subdivide the edge {a, b} of a complex (canonical JSON in) and report the
/// update together with the exact identity h' - h = x h(link).
#[wasm_bindgen]
pub fn subdivide(complex_json: &str, a: u32, b: u32) -> Result<String, String> {
    let complex: SimplicialComplex = serde_json::from_str(complex_json).map_err(err)?;
    let edge = Face::edge(VertexId(a), VertexId(b));
    let subdivided = edge_subdivide(&complex, &edge, complex.fresh_vertex()).map_err(err)?;
    let h_before = h_polynomial(&complex).map_err(err)?;
    let h_after = h_polynomial(&subdivided).map_err(err)?;
    let x_h_link = h_polynomial(&complex.link(&edge).map_err(err)?)
        .map_err(err)?
        .shift_up(1);
    let difference = &h_after - &h_before;
    let identity_ok = difference == x_h_link;
    let mut value = analyze_value(&subdivided, None)?;
    value["h_before"] = serde_json::to_value(&h_before).map_err(err)?;
    value["difference"] = serde_json::to_value(&difference).map_err(err)?;
    value["x_h_link"] = serde_json::to_value(&x_h_link).map_err(err)?;
    value["identity_ok"] = json!(identity_ok);
    serde_json::to_string(&value).map_err(err)
}

/// Decompose the h-polynomial of a built complex; returns the tree and its
/// audit summary.
#[wasm_bindgen]
pub fn decompose(spec: &str, strategy: &str) -> Result<String, String> {
    let built = parse_build_spec(spec, &NoFiles).map_err(err)?;
    let strategy =
        EdgeStrategy::parse(strategy).ok_or_else(|| format!("unknown strategy '{strategy}'"))?;
    let tree = iterated_gamma_decomposition(
        &built.complex,
        DecompOptions {
            strategy,
            path_budget: Budget {
                max_depth: 24,
                max_states: 60_000,
            },
        },
    )
    .map_err(err)?;
    let summary = summarize(&tree).map_err(err)?;
    serde_json::to_string(&json!({ "tree": tree, "summary": summary })).map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_reports_vectors() {
        let out = analyze("crosspoly(3)").unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["h"], serde_json::json!([1, 3, 3, 1]));
        assert_eq!(v["gamma"]["entries"], serde_json::json!([1, 0]));
        assert_eq!(v["sphere"], "certified-sphere");
        assert_eq!(v["edges"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn analyze_rejects_bad_specs() {
        assert!(analyze("cycle(3)").is_err());
        assert!(analyze("wat(3)").is_err());
    }

    #[test]
    fn subdivide_reports_identity() {
        let octa = analyze("crosspoly(3)").unwrap();
        let v: serde_json::Value = serde_json::from_str(&octa).unwrap();
        let complex = serde_json::to_string(&v["complex"]).unwrap();
        let out = subdivide(&complex, 0, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["identity_ok"], true);
        assert_eq!(v["h"], serde_json::json!([1, 4, 4, 1]));
        assert_eq!(v["vertices"], 7);
    }

    #[test]
    fn decompose_round_trips() {
        let out = decompose("cycle(5)", "max-link-h").unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["summary"]["reconstruction_ok"], true);
        assert_eq!(v["summary"]["collected_gamma"], serde_json::json!([1, 1]));
    }
}
