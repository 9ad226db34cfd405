//! The packet JSON schema, parsed by hand so every error carries a JSON
//! pointer. Canonical form: sorted keys, rationals as `"n"` or `"n/d"`,
//! eigenvalues in `(p, index)` order.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith::rational::{format_rational, parse_rational};
use crate::arith::{Rational, RationalPoly};
use crate::ideals::parse_label;
use crate::numfield::{NFElement, NumberField};
use crate::twists::{NewformPacket, PacketError};

use super::IngestError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PacketDocument {
    pub base_field: Vec<BigInt>,
    pub hecke_field: Vec<BigInt>,
    pub level_norm: u64,
    /// `(label, a_p in E's power basis)`.
    pub eigenvalues: Vec<(String, Vec<Rational>)>,
    pub twist_search_basis: Vec<Vec<Rational>>,
    pub integral_basis_hints: Option<Vec<u64>>,
    pub seed: Option<u64>,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> IngestError {
    IngestError::Schema { pointer: pointer.into(), message: message.into() }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, IngestError> {
    obj.get(key).ok_or_else(|| schema(format!("/{key}"), "missing required key"))
}

fn int_value(v: &Value, ptr: &str) -> Result<BigInt, IngestError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(i.into())
            } else if let Some(u) = n.as_u64() {
                Ok(u.into())
            } else {
                Err(schema(ptr, "expected an integer"))
            }
        }
        Value::String(s) => s.parse().map_err(|_| schema(ptr, "expected an integer")),
        _ => Err(schema(ptr, "expected an integer")),
    }
}

fn u64_value(v: &Value, ptr: &str) -> Result<u64, IngestError> {
    v.as_u64().ok_or_else(|| schema(ptr, "expected a non-negative integer"))
}

fn rational_value(v: &Value, ptr: &str) -> Result<Rational, IngestError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| schema(ptr, format!("malformed rational {s:?}"))),
        Value::Number(_) => int_value(v, ptr).map(Rational::from_integer),
        _ => Err(schema(ptr, "expected a rational string")),
    }
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, IngestError> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

fn int_list(v: &Value, ptr: &str) -> Result<Vec<BigInt>, IngestError> {
    array(v, ptr)?.iter().enumerate().map(|(i, x)| int_value(x, &format!("{ptr}/{i}"))).collect()
}

fn rational_list(v: &Value, ptr: &str) -> Result<Vec<Rational>, IngestError> {
    array(v, ptr)?.iter().enumerate().map(|(i, x)| rational_value(x, &format!("{ptr}/{i}"))).collect()
}

fn label_key(label: &str) -> (u64, usize, String) {
    match parse_label(label) {
        Ok((p, i)) => (p, i, String::new()),
        Err(_) => (u64::MAX, usize::MAX, label.to_string()),
    }
}

const KEYS: [&str; 7] =
    ["base_field", "eigenvalues", "hecke_field", "integral_basis_hints", "level_norm", "seed", "twist_search_basis"];

impl PacketDocument {
    pub fn parse(text: &str) -> Result<Self, IngestError> {
        let v: Value = serde_json::from_str(text).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, IngestError> {
        let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
        if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(schema(format!("/{k}"), "unknown key"));
        }
        let base_field = int_list(get(obj, "base_field")?, "/base_field")?;
        let hecke_field = int_list(get(obj, "hecke_field")?, "/hecke_field")?;
        let level_norm = u64_value(get(obj, "level_norm")?, "/level_norm")?;
        let mut eigenvalues = Vec::new();
        for (i, e) in array(get(obj, "eigenvalues")?, "/eigenvalues")?.iter().enumerate() {
            let ptr = format!("/eigenvalues/{i}");
            let eo = e.as_object().ok_or_else(|| schema(&ptr, "expected an object"))?;
            if let Some(k) = eo.keys().find(|k| *k != "prime" && *k != "ap") {
                return Err(schema(format!("{ptr}/{k}"), "unknown key"));
            }
            let label = eo
                .get("prime")
                .and_then(Value::as_str)
                .ok_or_else(|| schema(format!("{ptr}/prime"), "expected a prime label string"))?;
            let ap = rational_list(eo.get("ap").ok_or_else(|| schema(format!("{ptr}/ap"), "missing"))?, &format!("{ptr}/ap"))?;
            eigenvalues.push((label.to_string(), ap));
        }
        let twist_search_basis = array(get(obj, "twist_search_basis")?, "/twist_search_basis")?
            .iter()
            .enumerate()
            .map(|(i, t)| rational_list(t, &format!("/twist_search_basis/{i}")))
            .collect::<Result<_, _>>()?;
        let integral_basis_hints = match obj.get("integral_basis_hints") {
            None => None,
            Some(h) => Some(
                array(h, "/integral_basis_hints")?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| u64_value(x, &format!("/integral_basis_hints/{i}")))
                    .collect::<Result<_, _>>()?,
            ),
        };
        let seed = obj.get("seed").map(|s| u64_value(s, "/seed")).transpose()?;
        Ok(Self { base_field, hecke_field, level_norm, eigenvalues, twist_search_basis, integral_basis_hints, seed })
    }

    pub fn canonicalize(&mut self) {
        self.eigenvalues.sort_by_key(|(l, _)| label_key(l));
        if let Some(h) = &mut self.integral_basis_hints {
            h.sort_unstable();
            h.dedup();
        }
    }

    pub fn to_value(&self) -> Value {
        let ints = |v: &[BigInt]| -> Value {
            Value::Array(
                v.iter()
                    .map(|c| i64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::String(c.to_string())))
                    .collect(),
            )
        };
        let rats = |v: &[Rational]| Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect());
        let mut obj = Map::new();
        obj.insert("base_field".into(), ints(&self.base_field));
        obj.insert("hecke_field".into(), ints(&self.hecke_field));
        obj.insert("level_norm".into(), json!(self.level_norm));
        obj.insert(
            "eigenvalues".into(),
            Value::Array(self.eigenvalues.iter().map(|(l, ap)| json!({"prime": l, "ap": rats(ap)})).collect()),
        );
        obj.insert("twist_search_basis".into(), Value::Array(self.twist_search_basis.iter().map(|t| rats(t)).collect()));
        if let Some(h) = &self.integral_basis_hints {
            obj.insert("integral_basis_hints".into(), json!(h));
        }
        if let Some(s) = self.seed {
            obj.insert("seed".into(), json!(s));
        }
        Value::Object(obj)
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut doc = self.clone();
        doc.canonicalize();
        let mut s = serde_json::to_string_pretty(&doc.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    /// Validate into a packet.
    pub fn to_packet(&self) -> Result<NewformPacket, IngestError> {
        let k = field_from_coeffs(&self.base_field, "/base_field")?;
        if !k.is_totally_real() {
            return Err(IngestError::FieldNotTotallyReal);
        }
        if k.degree() % 2 == 0 {
            return Err(IngestError::EvenDegreeBaseField(k.degree()));
        }
        let e = field_from_coeffs(&self.hecke_field, "/hecke_field")?;
        let element = |field: &NumberField, c: &[Rational], ptr: String| -> Result<NFElement, IngestError> {
            if c.len() != field.degree() {
                return Err(schema(ptr, format!("expected {} coefficients, found {}", field.degree(), c.len())));
            }
            Ok(field.element(c.to_vec()))
        };
        let entries = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, (l, ap))| Ok((l.clone(), element(&e, ap, format!("/eigenvalues/{i}/ap"))?)))
            .collect::<Result<Vec<_>, IngestError>>()?;
        let basis = self
            .twist_search_basis
            .iter()
            .enumerate()
            .map(|(i, t)| element(&k, t, format!("/twist_search_basis/{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let hints = self.integral_basis_hints.clone().unwrap_or_default();
        NewformPacket::new(k, e, self.level_norm, entries, basis, hints, self.seed).map_err(|err| match err {
            PacketError::BadPrimeLabel { label, reason } => {
                let i = self.eigenvalues.iter().position(|(l, _)| *l == label).unwrap_or(0);
                IngestError::BadPrimeLabel { pointer: format!("/eigenvalues/{i}/prime"), label, reason }
            }
            PacketError::FieldNotTotallyReal => IngestError::FieldNotTotallyReal,
            PacketError::EvenDegreeBaseField(d) => IngestError::EvenDegreeBaseField(d),
            PacketError::ZeroTwistBasisElement(i) => schema(format!("/twist_search_basis/{i}"), "zero element"),
            PacketError::NonPositiveLevel => schema("/level_norm", "must be positive"),
            other => IngestError::Packet(other),
        })
    }

    pub fn from_packet(p: &NewformPacket) -> Self {
        let coeffs = |f: &NumberField| f.poly().coeffs().iter().map(|c| c.to_integer()).collect();
        let hints = p.integral_basis_hints().to_vec();
        Self {
            base_field: coeffs(p.base_field()),
            hecke_field: coeffs(p.hecke_field()),
            level_norm: p.level_norm(),
            eigenvalues: p.table().iter().map(|t| (t.prime.label(), t.ap.coords().to_vec())).collect(),
            twist_search_basis: p.twist_search_basis().iter().map(|t| t.coords().to_vec()).collect(),
            integral_basis_hints: if hints.is_empty() { None } else { Some(hints) },
            seed: p.seed(),
        }
    }
}

pub(crate) fn field_from_coeffs(coeffs: &[BigInt], ptr: &str) -> Result<NumberField, IngestError> {
    let poly = RationalPoly::from_ints(coeffs);
    if poly.degree().unwrap_or(0) == 0 || !poly.is_monic() {
        return Err(schema(ptr, "polynomial must be monic of positive degree, coefficients ascending"));
    }
    NumberField::new(poly).map_err(|e| schema(ptr, e.to_string()))
}

pub fn parse_packet(text: &str) -> Result<NewformPacket, IngestError> {
    PacketDocument::parse(text)?.to_packet()
}

pub fn serialize_packet(p: &NewformPacket) -> String {
    PacketDocument::from_packet(p).to_canonical_string()
}
