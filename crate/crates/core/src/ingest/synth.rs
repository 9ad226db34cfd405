//! Synthetic packets with planted inner twists.
//!
//! With `E = Q(√d_1, ..., √d_m)` and `u_j = √d_j`, set
//! `a_p = r_p · ∏ u_j^{x_j(p)}` where `x_j(p) = 1` iff `t_j` is a non-residue
//! at p. Then `a_p² ∈ Q`, Γ = Gal(E/Q), and the character of the twist
//! negating `u_j` is the quadratic character of `t_j`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::arith::gf2::gf2_rank;
use crate::arith::rational::{factor_integer, format_rational, int, parse_rational, rat};
use crate::arith::{Rational, RationalPoly};
use crate::ideals::{residue_symbol, split_prime_with_hints, valuation, IdealError};
use crate::numfield::nfpoly::{roots_in_field, sqrt_in_field};
use crate::numfield::{NFElement, NumberField};

use super::document::{field_from_coeffs, PacketDocument};
use super::IngestError;

const DEFAULT_RADICANDS: [i64; 6] = [2, 3, 5, 7, 11, 13];
const MAX_RATIONAL_PRIME: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSpec {
    pub base_field: Vec<BigInt>,
    /// Planted discriminants `t_j` in K's power basis.
    pub twists: Vec<Vec<Rational>>,
    /// `d_j` with `E = Q(√d_j)`; must be multiplicatively independent mod squares.
    pub radicands: Option<Vec<i64>>,
    /// Minimum number of table primes.
    pub prime_count: usize,
    pub seed: u64,
    /// Numerators and denominators of `r_p` are bounded by this.
    pub scale_bound: u32,
    pub zero_fraction: Rational,
    /// Extra twist-search basis elements besides the planted ones.
    pub decoys: usize,
    pub integral_basis_hints: Vec<u64>,
}

impl FixtureSpec {
    pub fn new(base_field: &[i64], twists: Vec<Vec<Rational>>, prime_count: usize, seed: u64) -> Self {
        Self {
            base_field: base_field.iter().map(|&c| c.into()).collect(),
            twists,
            radicands: None,
            prime_count,
            seed,
            scale_bound: 3,
            zero_fraction: rat(1, 10),
            decoys: 3,
            integral_basis_hints: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, IngestError> {
        let schema = |p: &str, m: &str| IngestError::Schema { pointer: p.into(), message: m.into() };
        let v: Value = serde_json::from_str(text).map_err(|e| schema("", &format!("invalid JSON: {e}")))?;
        let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
        let known = [
            "base_field", "decoys", "integral_basis_hints", "prime_count", "radicands", "scale_bound", "seed",
            "twists", "zero_fraction",
        ];
        if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(schema(&format!("/{k}"), "unknown key"));
        }
        let ints = |key: &str| -> Result<Vec<i64>, IngestError> {
            obj.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| schema(&format!("/{key}"), "expected an integer array"))?
                .iter()
                .enumerate()
                .map(|(i, x)| x.as_i64().ok_or_else(|| schema(&format!("/{key}/{i}"), "expected an integer")))
                .collect()
        };
        let uint = |key: &str, default: u64| -> Result<u64, IngestError> {
            obj.get(key).map_or(Ok(default), |x| x.as_u64().ok_or_else(|| schema(&format!("/{key}"), "expected a non-negative integer")))
        };
        let rational = |x: &Value, p: &str| -> Result<Rational, IngestError> {
            match x {
                Value::String(s) => parse_rational(s).ok_or_else(|| schema(p, "malformed rational")),
                Value::Number(n) => n.as_i64().map(int).ok_or_else(|| schema(p, "expected an integer")),
                _ => Err(schema(p, "expected a rational string")),
            }
        };
        let base_field = ints("base_field")?;
        let twists = obj
            .get("twists")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("/twists", "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.as_array()
                    .ok_or_else(|| schema(&format!("/twists/{i}"), "expected an array"))?
                    .iter()
                    .enumerate()
                    .map(|(j, c)| rational(c, &format!("/twists/{i}/{j}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut spec = Self::new(&base_field, twists, uint("prime_count", 40)? as usize, uint("seed", 0)?);
        if obj.contains_key("radicands") {
            spec.radicands = Some(ints("radicands")?);
        }
        spec.scale_bound = uint("scale_bound", 3)? as u32;
        spec.decoys = uint("decoys", 3)? as usize;
        if let Some(z) = obj.get("zero_fraction") {
            spec.zero_fraction = rational(z, "/zero_fraction")?;
        }
        if obj.contains_key("integral_basis_hints") {
            spec.integral_basis_hints = ints("integral_basis_hints")?.into_iter().map(|h| h as u64).collect();
        }
        Ok(spec)
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("base_field".into(), json!(self.base_field.iter().map(|c| c.to_i64()).collect::<Vec<_>>()));
        obj.insert(
            "twists".into(),
            json!(self.twists.iter().map(|t| t.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>()),
        );
        if let Some(r) = &self.radicands {
            obj.insert("radicands".into(), json!(r));
        }
        obj.insert("prime_count".into(), json!(self.prime_count));
        obj.insert("seed".into(), json!(self.seed));
        obj.insert("scale_bound".into(), json!(self.scale_bound));
        obj.insert("zero_fraction".into(), json!(format_rational(&self.zero_fraction)));
        obj.insert("decoys".into(), json!(self.decoys));
        if !self.integral_basis_hints.is_empty() {
            obj.insert("integral_basis_hints".into(), json!(self.integral_basis_hints));
        }
        Value::Object(obj)
    }
}

/// Minimal polynomial of `√d_1 + ... + √d_m`: fold `P(x) ↦ P(x+√d)·P(x-√d)`.
pub fn multiquadratic_poly(radicands: &[i64]) -> RationalPoly {
    let mut p = RationalPoly::x();
    for &d in radicands {
        let d = int(d);
        // (x + y)^k = A_k + y B_k modulo y² = d
        let (mut a, mut b) = (RationalPoly::zero(), RationalPoly::zero());
        let (mut ak, mut bk) = (RationalPoly::one(), RationalPoly::zero());
        for c in p.coeffs() {
            a = &a + &ak.scale(c);
            b = &b + &bk.scale(c);
            let x = RationalPoly::x();
            let next_a = &(&ak * &x) + &bk.scale(&d);
            let next_b = &ak + &(&bk * &x);
            ak = next_a;
            bk = next_b;
        }
        p = &(&a * &a) - &(&b * &b).scale(&d);
    }
    p
}

fn subset_products(elems: &[NFElement], one: &NFElement) -> Vec<NFElement> {
    let mut out = vec![one.clone()];
    for e in elems {
        let extra: Vec<NFElement> = out.iter().map(|x| x * e).collect();
        out.extend(extra);
    }
    out
}

fn independent_mod_squares(elems: &[NFElement], one: &NFElement) -> Result<Option<NFElement>, IngestError> {
    for x in subset_products(elems, one).into_iter().skip(1) {
        if sqrt_in_field(&x)?.is_some() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn decoy_pool(k: &NumberField) -> Vec<NFElement> {
    let mut pool: Vec<NFElement> = [-1, 2, 3, 5, 7, 11, 13, 17, 19].iter().map(|&c| k.elem(&[c])).collect();
    if !k.is_rationals() {
        let theta = k.generator();
        for c in [0, 1, -1, 2, -2, 3, -3] {
            pool.push(&theta + &k.elem(&[c]));
            pool.push(&theta.scale(&int(2)) + &k.elem(&[c]));
        }
    }
    pool
}

fn scale_candidates(bound: u32) -> Vec<Rational> {
    let b = bound.max(1) as i64;
    let mut out = Vec::new();
    for n in 1..=b {
        for d in 1..=b {
            if n.gcd(&d) == 1 {
                out.push(rat(n, d));
                out.push(rat(-n, d));
            }
        }
    }
    out
}

pub fn synth_packet(spec: &FixtureSpec) -> Result<PacketDocument, IngestError> {
    let k = field_from_coeffs(&spec.base_field, "/base_field")?;
    let schema = |p: String, m: &str| IngestError::Schema { pointer: p, message: m.into() };
    let mut ts = Vec::new();
    for (i, t) in spec.twists.iter().enumerate() {
        if t.len() != k.degree() {
            return Err(schema(format!("/twists/{i}"), "wrong number of coefficients"));
        }
        let x = k.element(t.clone());
        if x.is_zero() {
            return Err(schema(format!("/twists/{i}"), "zero discriminant"));
        }
        ts.push(x);
    }
    if let Some(sq) = independent_mod_squares(&ts, &k.one())? {
        return Err(IngestError::SquareDiscriminant(sq.display_in("a")));
    }
    let m = ts.len();
    let radicands = spec.radicands.clone().unwrap_or_else(|| DEFAULT_RADICANDS.iter().take(m).copied().collect());
    if radicands.len() != m {
        return Err(schema("/radicands".into(), "need one radicand per twist"));
    }
    let e = NumberField::new(multiquadratic_poly(&radicands))
        .map_err(|_| schema("/radicands".into(), "radicands are dependent mod squares"))?;
    let roots = radicands
        .iter()
        .map(|&d| {
            roots_in_field(&RationalPoly::from_i64(&[-d, 0, 1]), &e)?
                .into_iter()
                .next()
                .ok_or_else(|| schema("/radicands".into(), "no square root in E"))
        })
        .collect::<Result<Vec<_>, IngestError>>()?;

    let mut level_primes: BTreeSet<u64> = BTreeSet::from([2]);
    for t in &ts {
        let n = crate::brauer::local::integralize(t).norm().to_integer();
        for p in factor_integer(&n.abs()).into_keys() {
            level_primes.insert(p.to_u64().ok_or_else(|| schema("/twists".into(), "norm has a huge prime factor"))?);
        }
    }
    let level: u64 = level_primes.iter().product();

    let mut basis = ts.clone();
    for cand in decoy_pool(&k) {
        if basis.len() >= m + spec.decoys {
            break;
        }
        basis.push(cand);
        if independent_mod_squares(&basis, &k.one())?.is_some() {
            basis.pop();
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let scales = scale_candidates(spec.scale_bound);
    let zero_num = spec.zero_fraction.numer().to_u32().unwrap_or(0);
    let zero_den = spec.zero_fraction.denom().to_u32().unwrap_or(1).max(1);
    let mut entries: Vec<(String, Vec<Rational>)> = Vec::new();
    let mut patterns: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut symbol_rows: Vec<Vec<bool>> = Vec::new();
    let mut p = 2u64;
    let full_rank = |rows: &[Vec<bool>]| gf2_rank(rows, basis.len()) == basis.len();
    while entries.len() < spec.prime_count || patterns.len() < (1 << m) || !full_rank(&symbol_rows) {
        p += 1;
        if p > MAX_RATIONAL_PRIME {
            return Err(IngestError::FixtureExhausted(format!(
                "{} entries, {} of {} sign patterns",
                entries.len(),
                patterns.len(),
                1 << m
            )));
        }
        if level % p == 0 || !crate::arith::rational::is_prime_u64(p) {
            continue;
        }
        let primes = match split_prime_with_hints(&k, p, &spec.integral_basis_hints) {
            Ok(ps) => ps,
            Err(IdealError::IndexDivisorUnsupported { .. }) => continue,
            Err(err) => return Err(err.into()),
        };
        for prime in primes {
            let x: Vec<bool> =
                ts.iter().map(|t| residue_symbol(t, &prime).map(|s| s == -1)).collect::<Result<_, _>>()?;
            let radicand: i64 = radicands.iter().zip(&x).filter(|(_, &on)| on).map(|(d, _)| *d).product();
            let bound = Rational::from_integer(BigInt::from(4) * prime.norm());
            let ok: Vec<&Rational> = scales.iter().filter(|r| *r * *r * int(radicand) <= bound).collect();
            let zero = ok.is_empty() || rng.gen_ratio(zero_num.min(zero_den), zero_den);
            let ap = if zero {
                e.zero()
            } else {
                let r = (*ok.choose(&mut rng).expect("nonempty")).clone();
                roots.iter().zip(&x).filter(|(_, &on)| on).fold(NFElement::from_rational(&e, r), |acc, (u, _)| &acc * u)
            };
            if !zero {
                patterns.insert(x);
                let units = basis.iter().map(|b| valuation(b, &prime).map(|v| v == 0)).collect::<Result<Vec<_>, _>>()?;
                if units.iter().all(|&u| u) {
                    symbol_rows.push(
                        basis.iter().map(|b| residue_symbol(b, &prime).map(|s| s == -1)).collect::<Result<_, _>>()?,
                    );
                }
            }
            entries.push((prime.label(), ap.coords().to_vec()));
        }
    }
    let coeffs = |f: &NumberField| f.poly().coeffs().iter().map(|c| c.to_integer()).collect::<Vec<_>>();
    let doc = PacketDocument {
        base_field: coeffs(&k),
        hecke_field: coeffs(&e),
        level_norm: level,
        eigenvalues: entries,
        twist_search_basis: basis.iter().map(|b| b.coords().to_vec()).collect(),
        integral_basis_hints: if spec.integral_basis_hints.is_empty() { None } else { Some(spec.integral_basis_hints.clone()) },
        seed: Some(spec.seed),
    };
    Ok(doc)
}
