use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::{
    classical_bounds, mixed_noether_bound, mixed_nss_bound, mixed_nss_bound_many,
    unmixed_noether_bound, unmixed_nss_bound, Caps, Comparator, NssArgmin, SystemSpec,
};
use crate::error::Result;
use crate::json;
use crate::polytope::RationalPolytope;

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Skip the mixed bounds and report only the union-of-supports bounds.
    pub unmixed_only: bool,
    /// Include the classical comparator block.
    pub compare: bool,
}

/// Every bound for one system together with its intermediates.
///
/// When `s > n + 1` the mixed intermediates (`m`, `m_j`, `d_j`, `delta_j`)
/// describe the merged system of the minimizing subset.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: usize,
    pub s: usize,
    pub unmixed_noether: BigInt,
    pub unmixed_nss_degree: BigInt,
    pub unmixed_newton_cap: (BigInt, RationalPolytope),
    pub m: Option<BigInt>,
    pub m_j: Vec<BigInt>,
    pub d: u64,
    pub d_j: Vec<u64>,
    pub delta_j: Vec<Option<u64>>,
    pub mixed_nss: Option<BigInt>,
    pub mixed_nss_caps: Option<Caps>,
    pub argmin_kind: Option<NssArgmin>,
    pub subset_argmin_nss: Option<Vec<usize>>,
    pub noether_mixed: Option<BigInt>,
    pub subset_argmin_noether: Option<Vec<usize>>,
    pub comparators: Option<BTreeMap<String, Comparator>>,
    pub notes: Vec<String>,
}

pub fn bound_report(spec: &SystemSpec, opts: ReportOptions) -> Result<BoundReport> {
    let n = spec.dim();
    let s = spec.len();
    let d = spec.max_degree();
    let union = spec.union_support();
    let unmixed = unmixed_nss_bound(&union, d)?;
    let mut report = BoundReport {
        n,
        s,
        unmixed_noether: unmixed_noether_bound(&union),
        unmixed_nss_degree: unmixed.degree_bound,
        unmixed_newton_cap: (unmixed.newton_multiplier, unmixed.hull),
        m: None,
        m_j: Vec::new(),
        d,
        d_j: spec.degrees().to_vec(),
        delta_j: Vec::new(),
        mixed_nss: None,
        mixed_nss_caps: None,
        argmin_kind: None,
        subset_argmin_nss: None,
        noether_mixed: None,
        subset_argmin_noether: None,
        comparators: None,
        notes: Vec::new(),
    };
    if opts.compare {
        report.comparators = Some(classical_bounds(spec));
    }
    if opts.unmixed_only {
        report
            .notes
            .push("unmixed bounds computed from the union of all supports".into());
        return Ok(report);
    }

    let nss = if s <= n + 1 {
        report.mixed_nss_caps = Some(Caps::ProductDegree);
        mixed_nss_bound(spec)?
    } else {
        let many = mixed_nss_bound_many(spec)?;
        report.mixed_nss_caps = Some(Caps::CofactorDegree);
        report.subset_argmin_nss = Some(many.subset.clone());
        report.notes.push(
            "s > n + 1: mixed_nss is a minimum over merged (n+1)-subsets and caps deg(g_i)".into(),
        );
        many.at_subset
    };
    if s == 1 {
        report
            .notes
            .push("s = 1: delta_1 is undefined, so only the d*M candidate is used".into());
    }
    report.m = Some(nss.m);
    report.m_j = nss.m_j;
    report.d_j = nss.d_j;
    report.delta_j = nss.delta_j;
    report.mixed_nss = Some(nss.value);
    report.argmin_kind = Some(nss.argmin);

    let noether = mixed_noether_bound(spec)?;
    report.noether_mixed = Some(noether.value);
    report.subset_argmin_noether = noether.subset;
    Ok(report)
}

fn opt_int(v: &Option<BigInt>) -> Value {
    v.as_ref().map_or(Value::Null, json::int)
}

fn one_based(v: &Option<Vec<usize>>) -> Value {
    v.as_ref().map_or(Value::Null, |s| {
        json!(s.iter().map(|j| j + 1).collect::<Vec<_>>())
    })
}

impl BoundReport {
    /// Stable JSON object; indices `j` and subsets are 1-based.
    pub fn to_json(&self) -> Value {
        let mut o = Map::new();
        o.insert("n".into(), json!(self.n));
        o.insert("s".into(), json!(self.s));
        o.insert("unmixed_noether".into(), json::int(&self.unmixed_noether));
        o.insert(
            "unmixed_nss_degree".into(),
            json::int(&self.unmixed_nss_degree),
        );
        let (mult, hull) = &self.unmixed_newton_cap;
        let verts: Vec<Value> = hull
            .vertices()
            .iter()
            .map(|v| Value::Array(v.iter().map(json::rational).collect()))
            .collect();
        o.insert(
            "unmixed_newton_cap".into(),
            json!({ "multiplier": json::int(mult), "hull_vertices": verts }),
        );
        o.insert("M".into(), opt_int(&self.m));
        o.insert(
            "M_j".into(),
            Value::Array(self.m_j.iter().map(json::int).collect()),
        );
        o.insert("d".into(), json::uint(self.d));
        o.insert(
            "d_j".into(),
            Value::Array(self.d_j.iter().map(|&x| json::uint(x)).collect()),
        );
        o.insert(
            "delta_j".into(),
            Value::Array(
                self.delta_j
                    .iter()
                    .map(|x| x.map_or(Value::Null, json::uint))
                    .collect(),
            ),
        );
        o.insert("mixed_nss".into(), opt_int(&self.mixed_nss));
        o.insert(
            "mixed_nss_caps".into(),
            self.mixed_nss_caps
                .map_or(Value::Null, |c| json!(c.label())),
        );
        o.insert(
            "argmin_kind".into(),
            match self.argmin_kind {
                None => Value::Null,
                Some(NssArgmin::DegreeTimesLifted) => json!({ "candidate": "d*M" }),
                Some(NssArgmin::Dropped(j)) => {
                    json!({ "candidate": "d_j*delta_j*M_j", "j": j + 1 })
                }
            },
        );
        o.insert(
            "subset_argmin".into(),
            json!({
                "nss": one_based(&self.subset_argmin_nss),
                "noether": one_based(&self.subset_argmin_noether),
            }),
        );
        o.insert("noether_mixed".into(), opt_int(&self.noether_mixed));
        o.insert(
            "comparators".into(),
            self.comparators.as_ref().map_or(Value::Null, |c| {
                Value::Object(
                    c.iter()
                        .map(|(k, v)| {
                            (
                                k.clone(),
                                json!({
                                    "value": json::int(&v.value),
                                    "valid": v.valid,
                                    "caps": v.caps.label(),
                                    "note": v.note,
                                }),
                            )
                        })
                        .collect(),
                )
            }),
        );
        o.insert("notes".into(), json!(self.notes));
        Value::Object(o)
    }

    /// Plain-text table for terminals.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("n".into(), self.n.to_string()),
            ("s".into(), self.s.to_string()),
            ("d".into(), self.d.to_string()),
            (
                "unmixed Noether bound".into(),
                self.unmixed_noether.to_string(),
            ),
            (
                "unmixed deg(g_i f_i) bound".into(),
                self.unmixed_nss_degree.to_string(),
            ),
            (
                "unmixed Newton cap".into(),
                format!(
                    "{} * {}",
                    self.unmixed_newton_cap.0, self.unmixed_newton_cap.1
                ),
            ),
        ];
        if let Some(m) = &self.m {
            rows.push(("M".into(), m.to_string()));
            rows.push(("M_j".into(), join(&self.m_j)));
            rows.push(("d_j".into(), join(&self.d_j)));
            let deltas: Vec<String> = self
                .delta_j
                .iter()
                .map(|x| x.map_or("-".into(), |v| v.to_string()))
                .collect();
            rows.push(("delta_j".into(), deltas.join(" ")));
        }
        if let (Some(v), Some(c)) = (&self.mixed_nss, self.mixed_nss_caps) {
            let how = match self.argmin_kind {
                Some(NssArgmin::Dropped(j)) => format!(" (d_j delta_j M_j, j = {})", j + 1),
                _ => " (d M)".into(),
            };
            rows.push((format!("mixed bound on {}", c.label()), format!("{v}{how}")));
        }
        if let Some(j) = &self.subset_argmin_nss {
            rows.push(("minimizing subset (nss)".into(), join_one_based(j)));
        }
        if let Some(v) = &self.noether_mixed {
            rows.push(("mixed Noether bound".into(), v.to_string()));
        }
        if let Some(j) = &self.subset_argmin_noether {
            rows.push(("minimizing subset (noether)".into(), join_one_based(j)));
        }
        if let Some(c) = &self.comparators {
            for (k, v) in c {
                let flag = if v.valid { "" } else { " [not applicable]" };
                rows.push((
                    format!("{k} ({})", v.caps.label()),
                    format!("{}{flag}", v.value),
                ));
            }
        }
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_one_based(v: &[usize]) -> String {
    format!(
        "{{{}}}",
        v.iter()
            .map(|j| (j + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}
