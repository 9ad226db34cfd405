//! Python bindings. Packets, fixture specs and reports cross the boundary as
//! JSON strings; fields and elements as expressions in one variable.

use endoclass::arith::factor::factor_rational_poly;
use endoclass::brauer::{compute_endomorphism_class, hilbert_symbol_global};
use endoclass::ideals::split_prime_with_hints;
use endoclass::ingest::expr::{parse_element, parse_poly};
use endoclass::ingest::report::{report_json, to_canonical_string, twists_json};
use endoclass::ingest::{export_lmfdb_hmf, import_lmfdb_hmf, synth_packet, FixtureSpec, PacketDocument};
use endoclass::numfield::{factor_over_numberfield, NumberField};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(poly: &str) -> PyResult<NumberField> {
    let f = parse_poly(poly, None).map_err(|e| err(format!("{} at offset {}", e.message, e.offset)))?;
    NumberField::new(f).map_err(err)
}

/// Degree, number of real places and polynomial discriminant of `Q[x]/(f)`.
#[pyfunction]
fn field_info(poly: &str) -> PyResult<(usize, usize, String)> {
    let k = field(poly)?;
    Ok((k.degree(), k.real_place_count(), k.poly_discriminant().to_string()))
}

/// Primes above `p` as `(label, e, f)`.
#[pyfunction]
#[pyo3(signature = (poly, p, hints = vec![]))]
fn split_prime(poly: &str, p: u64, hints: Vec<u64>) -> PyResult<Vec<(String, u32, u32)>> {
    let k = field(poly)?;
    let ps = split_prime_with_hints(&k, p, &hints).map_err(err)?;
    Ok(ps.iter().map(|q| (q.label(), q.e(), q.f())).collect())
}

/// Irreducible factors of `f` over Q, or over `Q[a]/(field)` when given.
#[pyfunction]
#[pyo3(signature = (f, field_poly = None))]
fn factor(f: &str, field_poly: Option<&str>) -> PyResult<Vec<(String, u32)>> {
    let g = parse_poly(f, Some("x")).map_err(|e| err(e.message))?;
    match field_poly {
        None => {
            let fac = factor_rational_poly(&g).map_err(err)?;
            Ok(fac.factors.iter().map(|(h, e)| (h.display_in("x"), *e)).collect())
        }
        Some(fp) => {
            let k = field(fp)?;
            let fs = factor_over_numberfield(&g, &k).map_err(err)?;
            Ok(fs.iter().map(|h| (h.display_with("a", "x"), 1)).collect())
        }
    }
}

/// Ramified places of the quaternion algebra `(a, b)` over `Q[x]/(field)`.
#[pyfunction]
fn hilbert_symbol(field_poly: &str, a: &str, b: &str) -> PyResult<Vec<String>> {
    let k = field(field_poly)?;
    let a = parse_element(&k, a, None).map_err(|e| err(e.message))?;
    let b = parse_element(&k, b, None).map_err(|e| err(e.message))?;
    Ok(hilbert_symbol_global(&a, &b).map_err(err)?.labels())
}

fn packet(json: &str) -> PyResult<endoclass::twists::NewformPacket> {
    PacketDocument::parse(json).and_then(|d| Ok(d.to_packet()?)).map_err(err)
}

/// Full pipeline: packet JSON in, report JSON out.
#[pyfunction]
fn compute(packet_json: &str) -> PyResult<String> {
    let r = compute_endomorphism_class(&packet(packet_json)?).map_err(err)?;
    Ok(to_canonical_string(&report_json(&r)))
}

/// Center field, inner twists and discriminants as JSON.
#[pyfunction]
fn twists(packet_json: &str) -> PyResult<String> {
    let p = packet(packet_json)?;
    let a = endoclass::brauer::analyze_twists(&p, &Default::default()).map_err(err)?;
    Ok(to_canonical_string(&twists_json(&p, &a)))
}

/// Synthesize a packet from a fixture spec.
#[pyfunction]
fn synth(spec_json: &str) -> PyResult<String> {
    let spec = FixtureSpec::parse(spec_json).map_err(err)?;
    Ok(synth_packet(&spec).map_err(err)?.to_canonical_string())
}

#[pyfunction]
fn import_dump(text: &str) -> PyResult<String> {
    Ok(import_lmfdb_hmf(text).map_err(err)?.to_canonical_string())
}

#[pyfunction]
fn export_dump(packet_json: &str) -> PyResult<String> {
    export_lmfdb_hmf(&PacketDocument::parse(packet_json).map_err(err)?).map_err(err)
}

#[pymodule]
#[pyo3(name = "endoclass")]
fn endoclass_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(field_info, m)?)?;
    m.add_function(wrap_pyfunction!(split_prime, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(twists, m)?)?;
    m.add_function(wrap_pyfunction!(synth, m)?)?;
    m.add_function(wrap_pyfunction!(import_dump, m)?)?;
    m.add_function(wrap_pyfunction!(export_dump, m)?)?;
    Ok(())
}
