//! JSON and plain-text renderings of pipeline results.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use crate::brauer::{BrauerClass, EndomorphismReport, LocalWitness, Method, TwistAnalysis};
use crate::numfield::{NFElement, NumberField};
use crate::twists::NewformPacket;

fn coords(x: &NFElement) -> Value {
    json!(x.coord_strings())
}

fn poly_coeffs(f: &NumberField) -> Value {
    Value::Array(
        f.poly()
            .coeffs()
            .iter()
            .map(|c| {
                let n = c.to_integer();
                i64::try_from(&n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
            })
            .collect(),
    )
}

pub fn class_json(c: &BrauerClass) -> Value {
    json!(c.labels())
}

pub fn witness_json(w: &LocalWitness) -> Value {
    let mut obj = Map::new();
    obj.insert("place".into(), json!(w.place.label()));
    obj.insert("invariant".into(), json!(w.invariant.to_string()));
    let method = match w.method {
        Method::RealSigns => "real_signs",
        Method::Tame => "tame",
        Method::Conic { precision } => {
            obj.insert("precision".into(), json!(precision));
            "conic"
        }
    };
    obj.insert("method".into(), json!(method));
    Value::Object(obj)
}

pub fn report_json(r: &EndomorphismReport) -> Value {
    let g = &r.tower.g;
    json!({
        "center_field": poly_coeffs(&r.analysis.center),
        "m": r.m(),
        "discriminants": r.discriminants.iter().map(coords).collect::<Vec<_>>(),
        "frobenius_primes": r.frobenius_primes,
        "compositum_factor": {
            "index": r.tower.factor_index,
            "count": r.tower.factor_count,
            "coefficients": g.coeffs().iter().map(coords).collect::<Vec<_>>(),
        },
        "class": class_json(&r.class),
        "witness": r.symbols.iter().map(|s| json!({
            "t": coords(&s.t),
            "prime": s.prime,
            "ap_squared": coords(&s.ap_squared),
            "norm": coords(&s.norm),
            "class": class_json(&s.class),
            "places": s.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "warnings": r.warnings,
    })
}

pub fn report_text(r: &EndomorphismReport) -> String {
    let mut s = String::new();
    let f = &r.analysis.center;
    let _ = writeln!(s, "center field F: {}", f.poly().display_in("x"));
    let _ = writeln!(s, "m: {}", r.m());
    for (i, (t, p)) in r.discriminants.iter().zip(&r.frobenius_primes).enumerate() {
        let _ = writeln!(s, "t_{} = {}   p_{} = {}", i + 1, t.display_in("w"), i + 1, p);
    }
    let _ = writeln!(
        s,
        "compositum factor: {} ({} of {})",
        r.tower.g.display_with("a", "y"),
        r.tower.factor_index,
        r.tower.factor_count
    );
    for (i, sym) in r.symbols.iter().enumerate() {
        let _ = writeln!(s, "cor(t_{}, a_p^2) = ({}, {})_F = {}", i + 1, sym.norm.display_in("a"), sym.ap_squared.display_in("a"), sym.class);
    }
    let _ = writeln!(s, "class: {}", r.class);
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

pub fn twists_json(packet: &NewformPacket, a: &TwistAnalysis) -> Value {
    let table = packet.table();
    let characters: Map<String, Value> = table
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.ap.is_zero())
        .map(|(i, t)| (t.prime.label(), json!(a.twists.chars.iter().map(|row| row[i]).collect::<Vec<_>>())))
        .collect();
    json!({
        "center_field": poly_coeffs(&a.center),
        "gamma_order": a.twists.order(),
        "m": a.discriminants.m(),
        "discriminants": a.discriminants.discriminants.iter().map(coords).collect::<Vec<_>>(),
        "dual_basis": a.discriminants.dual_basis,
        "characters": characters,
        "warnings": packet.warnings(),
    })
}

pub fn twists_text(packet: &NewformPacket, a: &TwistAnalysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "center field F: {}", a.center.poly().display_in("x"));
    let _ = writeln!(s, "|Gamma| = {}, m = {}", a.twists.order(), a.discriminants.m());
    for (j, t) in a.discriminants.discriminants.iter().enumerate() {
        let _ = writeln!(s, "t_{} = {}", j + 1, t.display_in("w"));
    }
    for w in packet.warnings() {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

pub fn symbol_json(a: &NFElement, b: &NFElement, class: &BrauerClass, witnesses: &[LocalWitness]) -> Value {
    json!({
        "field": poly_coeffs(a.field()),
        "a": coords(a),
        "b": coords(b),
        "class": class_json(class),
        "witness": witnesses.iter().map(witness_json).collect::<Vec<_>>(),
    })
}

pub fn symbol_text(class: &BrauerClass, witnesses: &[LocalWitness]) -> String {
    let mut s = String::new();
    for w in witnesses {
        let _ = writeln!(s, "{:>8}  {:<3}  {:?}", w.place.label(), w.invariant.to_string(), w.method);
    }
    let _ = writeln!(s, "class: {class}");
    s
}

/// Sorted keys, two-space indentation, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
