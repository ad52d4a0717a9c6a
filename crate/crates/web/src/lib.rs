//! Browser demo bindings. Each operation maps a JSON string to a JSON string;
//! the exported wrappers only convert errors for JavaScript.

use std::cmp::Ordering;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use nssbound::bounds::{applicable_nss_cap, bound_report, ReportOptions};
use nssbound::certificate::{certificate_search, SearchMode, SearchOutcome};
use nssbound::json;
use nssbound::mixed_volume::{mixed_volume, normalized_volume, SupportTuple};
use nssbound::polytope::{ExponentVector, Support};
use nssbound::system::SystemFile;

fn planar_support(v: &Value, name: &str) -> Result<Support, String> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_value(v.clone()).map_err(|e| format!("{name}: {e}"))?;
    Support::from_rows(2, &rows).map_err(|e| format!("{name}: {e}"))
}

/// Hull vertices in counterclockwise order, starting from the lowest-leftmost one.
pub fn polygon(a: &Support) -> Vec<[i64; 2]> {
    let hull = a.hull();
    let mut pts: Vec<[i64; 2]> = hull
        .lattice_vertices()
        .unwrap_or_default()
        .iter()
        .map(|p: &ExponentVector| [p.coords()[0] as i64, p.coords()[1] as i64])
        .collect();
    pts.sort_by_key(|p| (p[1], p[0]));
    if pts.len() > 2 {
        let o = pts[0];
        pts[1..].sort_by(|p, q| {
            let cross = (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
            match cross.cmp(&0) {
                Ordering::Greater => Ordering::Less,
                Ordering::Less => Ordering::Greater,
                Ordering::Equal => ((p[0] - o[0]).abs() + (p[1] - o[1]).abs())
                    .cmp(&((q[0] - o[0]).abs() + (q[1] - o[1]).abs())),
            }
        });
    }
    pts
}

/// `{"a": [[x, y], ...], "b": [[x, y], ...]}` to the mixed volume, the three
/// normalized areas and the polygons `conv(A)`, `conv(B)`, `conv(A) + conv(B)`.
pub fn planar_mixed_volume(input: &str) -> Result<String, String> {
    let v: Value = serde_json::from_str(input).map_err(|e| e.to_string())?;
    let a = planar_support(&v["a"], "a")?;
    let b = planar_support(&v["b"], "b")?;
    let sum = Support::new(
        2,
        a.points().flat_map(|p| b.points().map(move |q| p.add(q))),
    )
    .map_err(|e| e.to_string())?;
    let tuple = SupportTuple::new(2, vec![a.clone(), b.clone()]).map_err(|e| e.to_string())?;
    let mv = mixed_volume(&tuple).map_err(|e| e.to_string())?;
    let out = json!({
        "mixed_volume": json::int(&mv),
        "normalized_area": {
            "a": json::int(&normalized_volume(&a)),
            "b": json::int(&normalized_volume(&b)),
            "sum": json::int(&normalized_volume(&sum)),
        },
        "polygons": { "a": polygon(&a), "b": polygon(&b), "sum": polygon(&sum) },
    });
    Ok(json::to_canonical_string(&out))
}

/// Bound report for a system file, with a `bound` headline for `kind`
/// (`"nss"` or `"noether"`).
pub fn bounds(system: &str, kind: &str, compare: bool) -> Result<String, String> {
    let sys = SystemFile::parse(system).map_err(|e| e.to_string())?;
    let spec = sys.spec().map_err(|e| e.to_string())?;
    let report = bound_report(
        &spec,
        ReportOptions {
            unmixed_only: false,
            compare,
        },
    )
    .map_err(|e| e.to_string())?;
    let headline = match kind {
        "nss" => report.mixed_nss.clone(),
        "noether" => report.noether_mixed.clone(),
        other => return Err(format!("unknown bound kind {other:?}")),
    };
    let mut v = report.to_json();
    v["bound"] = headline.as_ref().map_or(Value::Null, json::int);
    v["kind"] = json!(kind);
    Ok(json::to_canonical_string(&v))
}

/// Total-degree certificate search; `cap` is a number or `"auto"`.
pub fn certificate(system: &str, cap: &str) -> Result<String, String> {
    let sys = SystemFile::parse(system).map_err(|e| e.to_string())?;
    let fs = sys
        .polynomials
        .as_ref()
        .ok_or("the system has no polynomials")?;
    let (cap, bound) = if cap.trim() == "auto" {
        let b = applicable_nss_cap(&sys.spec().map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let c = u64::try_from(&b.cap).map_err(|_| format!("bound {} is too large", b.cap))?;
        (c, Some(b))
    } else {
        (
            cap.trim()
                .parse::<u64>()
                .map_err(|_| format!("cap {cap:?} is not a nonnegative integer"))?,
            None,
        )
    };
    let mut out = json!({ "cap": cap });
    if let Some(b) = &bound {
        out["bound"] = json!({ "value": json::int(&b.cap), "source": b.source });
    }
    match certificate_search(fs, &SearchMode::TotalDegree, cap).map_err(|e| e.to_string())? {
        SearchOutcome::Found(c) => {
            out["status"] = json!("found");
            out["certificate"] = c.to_json();
            out["display"] = json!(c
                .cofactors
                .iter()
                .enumerate()
                .map(|(i, g)| format!("g_{} = {g}", i + 1))
                .collect::<Vec<_>>());
        }
        SearchOutcome::InfeasibleAtCap { .. } => {
            out["status"] = json!("infeasible");
            out["ideal_is_proper"] = json!(bound.is_some());
        }
    }
    Ok(json::to_canonical_string(&out))
}

#[wasm_bindgen(js_name = planarMixedVolume)]
pub fn planar_mixed_volume_js(input: &str) -> Result<String, JsError> {
    planar_mixed_volume(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = bounds)]
pub fn bounds_js(system: &str, kind: &str, compare: bool) -> Result<String, JsError> {
    bounds(system, kind, compare).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = certificate)]
pub fn certificate_js(system: &str, cap: &str) -> Result<String, JsError> {
    certificate(system, cap).map_err(|e| JsError::new(&e))
}
