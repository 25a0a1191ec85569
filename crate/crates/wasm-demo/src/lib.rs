//! Browser bindings: each export takes a JSON string and returns a JSON
//! string, `{"ok": ...}` or `{"error": "..."}`. The plain `*_json`
//! functions do the work and are what the native tests call.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use cirigid::bounds::{codim_table, condition_codims, hypertangent_ratio_check, theorem02_bound};
use cirigid::fibration::{superrigidity_criterion, FibrationSpec};
use cirigid::singgraph::{path_counts, prop52_check, simplex_min, validate_as, GraphClass, ResolutionGraph};

type Res = std::result::Result<Value, String>;

fn wrap(r: Res) -> String {
    match r {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn int(doc: &Value, key: &str) -> std::result::Result<Option<i64>, String> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v.as_i64().map(Some).ok_or_else(|| format!("{key} must be an integer")),
    }
}

fn need(doc: &Value, key: &str) -> std::result::Result<i64, String> {
    int(doc, key)?.ok_or_else(|| format!("{key} is required"))
}

fn parse(src: &str) -> Res {
    serde_json::from_str(src).map_err(|e| format!("bad JSON: {e}"))
}

fn value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// `{"m", "d1", "d2", "l1", "l2"}` to the criterion report.
pub fn fibration_check_json(src: &str) -> Res {
    let doc = parse(src)?;
    let spec = FibrationSpec::new(need(&doc, "m")?, need(&doc, "d1")?, need(&doc, "d2")?, need(&doc, "l1")?, need(&doc, "l2")?)
        .map_err(|e| e.to_string())?;
    superrigidity_criterion(&spec).map(value).map_err(|e| e.to_string())
}

/// `{"M"}` for the general bound and condition codimensions, or
/// `{"d1", "d2"}` (optionally with `"M"`) for the full table.
pub fn codim_bounds_json(src: &str) -> Res {
    let doc = parse(src)?;
    let m = int(&doc, "M")?;
    match (int(&doc, "d1")?, int(&doc, "d2")?) {
        (Some(d1), Some(d2)) => {
            let table = codim_table(m.unwrap_or(d1 + d2 - 2), d1, d2).map_err(|e| e.to_string())?;
            let ratio = hypertangent_ratio_check(d1, d2).map_err(|e| e.to_string())?;
            Ok(json!({ "table": table, "ratio": ratio }))
        }
        (None, None) => {
            let m = m.ok_or("give M, or d1 and d2")?;
            Ok(json!({
                "bound": { "d1_not_3": theorem02_bound(m, 4).value.to_string(), "d1_3": theorem02_bound(m, 3).value.to_string() },
                "conditions": condition_codims(m),
            }))
        }
        _ => Err("d1 and d2 go together".into()),
    }
}

/// A graph document `{"N", "arrows", "class"?}` to validation, path counts,
/// the path count inequality and the linear minimum where they apply.
pub fn graph_analysis_json(src: &str) -> Res {
    let g = ResolutionGraph::from_json(src).map_err(|e| e.to_string())?;
    let validation: Vec<_> = GraphClass::ALL.iter().map(|&c| validate_as(&g, c)).collect();
    let mut out = json!({ "validation": validation });
    if g.root() == 1 && validate_as(&g, GraphClass::Weak).valid {
        out["path_counts"] = value(path_counts(&g).map_err(|e| e.to_string())?);
        if validate_as(&g, GraphClass::Prefix).valid {
            let g = g.with_class(GraphClass::Prefix);
            out["inequality"] = value(prop52_check(&g).map_err(|e| e.to_string())?);
            if g.top() >= 2 {
                out["minimum"] = value(simplex_min(&g).map_err(|e| e.to_string())?);
            }
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn fibration_check(src: &str) -> String {
    wrap(fibration_check_json(src))
}

#[wasm_bindgen]
pub fn codim_bounds(src: &str) -> String {
    wrap(codim_bounds_json(src))
}

#[wasm_bindgen]
pub fn graph_analysis(src: &str) -> String {
    wrap(graph_analysis_json(src))
}
