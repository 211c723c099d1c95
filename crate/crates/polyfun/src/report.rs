//! Text and JSON renderings of proof-step reports.

use polyfun_core::proofstep::StepReport;
use serde_json::{json, Map, Value};

/// `"1,2"` becomes the path `k["1"]["2"]`.
fn insert_nested(map: &mut Map<String, Value>, label: &str, value: Value) {
    let parts: Vec<&str> = label.split(',').collect();
    let mut cur = map;
    for (i, p) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            cur.insert(p.to_string(), value);
            return;
        }
        cur = cur
            .entry(p.to_string())
            .or_insert_with(|| Value::Object(Map::new()))
            .as_object_mut()
            .expect("nested labels");
    }
}

pub fn step_json(r: &StepReport) -> Value {
    let mut k = Map::new();
    for (label, poly) in &r.k {
        insert_nested(&mut k, label, Value::String(poly.to_string()));
    }
    let mut cert = Map::new();
    let denominator = r.certificate.as_ref().map(|c| c.h.to_string());
    for (name, numerator, power, expression) in r.certificate_lines() {
        cert.insert(
            name,
            json!({
                "numerator": numerator,
                "h_power": power,
                "denominator": denominator,
                "expression": expression,
            }),
        );
    }
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "status": c.status.to_string(), "witness": c.witness}))
        .collect();
    json!({
        "field": r.field.to_string(),
        "functor": r.functor.to_string(),
        "u": r.u,
        "n": r.n,
        "seed": r.seed,
        "f": r.f.to_string(),
        "delta": r.delta.map_or(json!("infinite"), |d| json!(d)),
        "r0": r.r0,
        "e0": r.e0,
        "h": r.h.to_string(),
        "k": k,
        "certificate": cert,
        "checks": checks,
    })
}

pub fn step_text(r: &StepReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(&v);
        out.push('\n');
    };
    line("field", r.field.to_string());
    line("functor", r.functor.to_string());
    line("u", r.u.to_string());
    line("n", r.n.to_string());
    line("seed", r.seed.to_string());
    line("f", r.f.to_string());
    line("delta", r.delta.map_or("infinite".into(), |d| d.to_string()));
    line("r0", r.r0.clone());
    line("e0", r.e0.to_string());
    line("h", r.h.to_string());
    for (label, poly) in &r.k {
        line(&format!("k[{}]", label.replace(',', "][")), poly.to_string());
    }
    for (name, _, _, expression) in r.certificate_lines() {
        line(&format!("certificate[{name}]"), expression);
    }
    for c in &r.checks {
        let w = c.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default();
        line(&format!("check {}", c.name), format!("{}{w}", c.status));
    }
    out
}
