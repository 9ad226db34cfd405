//! Line-oriented eigenvalue dumps in the style of published Hilbert modular
//! form data. The grammar is documented in `docs/lmfdb_grammar.md`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::hensel::from_fp;
use crate::arith::rational::parse_rational;
use crate::arith::{Rational, RationalPoly};
use crate::ideals::prime::prime_by_label;
use crate::ideals::{split_prime_with_hints, valuation};
use crate::numfield::{NFElement, NumberField};

use super::document::PacketDocument;
use super::expr::parse_poly;
use super::IngestError;

struct Statement<'a> {
    key: String,
    value: &'a str,
    /// Byte offset of `value` in the input.
    offset: usize,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

fn grammar(text: &str, offset: usize, message: impl Into<String>) -> IngestError {
    let (line, column) = line_col(text, offset);
    IngestError::Grammar { line, column, message: message.into() }
}

/// Blank out `//` comments, keeping byte offsets intact.
fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| match l.find("//") {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn statements<'a>(original: &str, text: &'a str) -> Result<Vec<Statement<'a>>, IngestError> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ';' if depth == 0 => {
                let stmt = &text[start..i];
                if !stmt.trim().is_empty() {
                    let lead = stmt.len() - stmt.trim_start().len();
                    let Some(eq) = stmt.find(":=") else {
                        return Err(grammar(original, start + lead, "expected `NAME := value;`"));
                    };
                    let key = stmt[..eq].split_whitespace().collect::<Vec<_>>().join(" ").to_uppercase();
                    let raw = &stmt[eq + 2..];
                    let vlead = raw.len() - raw.trim_start().len();
                    out.push(Statement { key, value: raw.trim(), offset: start + eq + 2 + vlead });
                }
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(grammar(original, i, "unbalanced bracket"));
        }
    }
    if !text[start..].trim().is_empty() {
        let lead = text[start..].len() - text[start..].trim_start().len();
        return Err(grammar(original, start + lead, "statement is missing its terminating `;`"));
    }
    Ok(out)
}

/// Items of a top-level bracketed list, with absolute offsets.
fn list_items<'a>(original: &str, s: &'a str, offset: usize) -> Result<Vec<(&'a str, usize)>, IngestError> {
    let t = s.trim_end();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(grammar(original, offset, "expected a bracketed list"));
    }
    let inner = &t[1..t.len() - 1];
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let push = |items: &mut Vec<(&'a str, usize)>, a: usize, b: usize| {
        let piece = &inner[a..b];
        let lead = piece.len() - piece.trim_start().len();
        items.push((piece.trim(), offset + 1 + a + lead));
    };
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                push(&mut items, start, i);
                start = i + 1;
            }
            _ => {}
        }
    }
    push(&mut items, start, inner.len());
    if let Some((_, off)) = items.iter().find(|(p, _)| p.is_empty()) {
        return Err(grammar(original, *off, "empty list item"));
    }
    Ok(items)
}

fn poly_at(original: &str, s: &str, offset: usize, var: &str) -> Result<RationalPoly, IngestError> {
    parse_poly(s, Some(var)).map_err(|e| grammar(original, offset + e.offset, e.message))
}

fn field_at(original: &str, s: &str, offset: usize) -> Result<NumberField, IngestError> {
    let f = poly_at(original, s, offset, "x")?;
    NumberField::new(f).map_err(|e| grammar(original, offset, e.to_string()))
}

fn integer_at(original: &str, s: &str, offset: usize) -> Result<u64, IngestError> {
    s.trim().parse().map_err(|_| grammar(original, offset, "expected a non-negative integer"))
}

/// Parse a dump into a packet document. Entries at primes dividing the level
/// norm are dropped.
pub fn import_lmfdb_hmf(original: &str) -> Result<PacketDocument, IngestError> {
    let text = strip_comments(original);
    let stmts = statements(original, &text)?;
    let find = |key: &str| stmts.iter().find(|s| s.key == key);
    let require = |key: &str| find(key).ok_or_else(|| grammar(original, original.len(), format!("missing `{key} := ...;`")));
    if let Some(s) = stmts.iter().find(|s| {
        !["FIELD", "LEVEL NORM", "PRIMES", "HECKE FIELD", "HECKE EIGENVALUES", "TWIST BASIS", "HINTS"].contains(&s.key.as_str())
    }) {
        return Err(grammar(original, s.offset, format!("unknown statement {:?}", s.key)));
    }

    let fs = require("FIELD")?;
    let k = field_at(original, fs.value, fs.offset)?;
    let ls = require("LEVEL NORM")?;
    let level = integer_at(original, ls.value, ls.offset)?;
    let es = require("HECKE FIELD")?;
    let e = field_at(original, es.value, es.offset)?;
    let hints = match find("HINTS") {
        None => Vec::new(),
        Some(h) => list_items(original, h.value, h.offset)?
            .into_iter()
            .map(|(s, off)| integer_at(original, s, off))
            .collect::<Result<_, _>>()?,
    };

    let ps = require("PRIMES")?;
    let primes = list_items(original, ps.value, ps.offset)?;
    let hs = require("HECKE EIGENVALUES")?;
    let eigen = list_items(original, hs.value, hs.offset)?;
    if primes.len() != eigen.len() {
        return Err(grammar(
            original,
            hs.offset,
            format!("{} eigenvalues for {} primes", eigen.len(), primes.len()),
        ));
    }

    let mut entries = Vec::new();
    for (entry, ((pstr, poff), (astr, aoff))) in primes.iter().zip(&eigen).enumerate() {
        let parts = list_items(original, pstr, *poff)?;
        if parts.len() != 3 {
            return Err(grammar(original, *poff, "expected [norm, p, alpha]"));
        }
        let norm = integer_at(original, parts[0].0, parts[0].1)?;
        let p = integer_at(original, parts[1].0, parts[1].1)?;
        let alpha = NFElement::from_poly(&k, &poly_at(original, parts[2].0, parts[2].1, "w")?);
        if level % p.max(1) == 0 {
            continue;
        }
        let label = match_prime(&k, norm, p, &alpha, &hints).map_err(|detail| IngestError::PrimeMatchFailed { entry, detail })?;
        let ap = if astr.starts_with('[') {
            let coeffs = list_items(original, astr, *aoff)?
                .into_iter()
                .map(|(c, off)| parse_rational(c).ok_or_else(|| grammar(original, off, "expected a rational")))
                .collect::<Result<Vec<Rational>, _>>()?;
            if coeffs.len() != e.degree() {
                return Err(IngestError::DegreeMismatch { entry, expected: e.degree(), found: coeffs.len() });
            }
            coeffs
        } else {
            let poly = poly_at(original, astr, *aoff, "e")?;
            NFElement::from_poly(&e, &poly).coords().to_vec()
        };
        entries.push((label, ap));
    }

    let twist_search_basis = match find("TWIST BASIS") {
        None => Vec::new(),
        Some(t) => list_items(original, t.value, t.offset)?
            .into_iter()
            .map(|(s, off)| Ok(NFElement::from_poly(&k, &poly_at(original, s, off, "w")?).coords().to_vec()))
            .collect::<Result<_, IngestError>>()?,
    };
    let coeffs = |f: &NumberField| f.poly().coeffs().iter().map(|c| c.to_integer()).collect::<Vec<BigInt>>();
    let mut doc = PacketDocument {
        base_field: coeffs(&k),
        hecke_field: coeffs(&e),
        level_norm: level,
        eigenvalues: entries,
        twist_search_basis,
        integral_basis_hints: if hints.is_empty() { None } else { Some(hints) },
        seed: None,
    };
    doc.canonicalize();
    Ok(doc)
}

/// Label of the prime `(p, alpha)` of norm `norm`: it is prime exactly when
/// `min(e_i, v_i(alpha))` is 1 for one prime above p and 0 for the rest.
fn match_prime(k: &NumberField, norm: u64, p: u64, alpha: &NFElement, hints: &[u64]) -> Result<String, String> {
    let primes = split_prime_with_hints(k, p, hints).map_err(|e| e.to_string())?;
    let mut hit = Vec::new();
    for pr in &primes {
        let v = if alpha.is_zero() { i64::MAX } else { valuation(alpha, pr).map_err(|e| e.to_string())? };
        let m = v.min(pr.e() as i64);
        if m > 1 || m < 0 {
            return Err(format!("({p}, alpha) is not a prime ideal"));
        }
        if m == 1 {
            hit.push(pr);
        }
    }
    match hit.as_slice() {
        [pr] if pr.norm() == BigInt::from(norm) => Ok(pr.label()),
        [pr] => Err(format!("({p}, alpha) has norm {}, not {norm}", pr.norm())),
        [] => Err(format!("alpha reduces into no prime factor above {p}")),
        _ => Err(format!("({p}, alpha) is divisible by several primes")),
    }
}

/// Two-element generator `alpha = g(w)` of a table prime, `g` the lifted residue factor.
fn prime_generator(k: &NumberField, label: &str, hints: &[u64]) -> Result<(u64, u64, NFElement), IngestError> {
    let pr = prime_by_label(k, label, hints)?;
    let g = RationalPoly::from_ints(&from_fp(pr.residue_poly()));
    let mut alpha = NFElement::from_poly(k, &g);
    if alpha.is_zero() {
        alpha = k.elem(&[pr.p() as i64]);
    }
    let norm = pr.norm().to_u64().expect("prime norms in tables fit in u64");
    Ok((norm, pr.p(), alpha))
}

/// Render a document in the dump grammar.
pub fn export_lmfdb_hmf(doc: &PacketDocument) -> Result<String, IngestError> {
    let k = NumberField::new(RationalPoly::from_ints(&doc.base_field))?;
    let e = NumberField::new(RationalPoly::from_ints(&doc.hecke_field))?;
    let hints = doc.integral_basis_hints.clone().unwrap_or_default();
    let mut primes = Vec::new();
    let mut eigen = Vec::new();
    for (label, ap) in &doc.eigenvalues {
        let (norm, p, alpha) = prime_generator(&k, label, &hints)?;
        primes.push(format!("[{norm}, {p}, {}]", alpha.display_in("w")));
        if ap.len() != e.degree() {
            return Err(IngestError::DegreeMismatch { entry: eigen.len(), expected: e.degree(), found: ap.len() });
        }
        let x = e.element(ap.clone());
        eigen.push(if x.is_zero() { "0".to_string() } else { x.display_in("e") });
    }
    let mut s = String::new();
    let _ = writeln!(s, "FIELD := {};", k.poly().display_in("x"));
    let _ = writeln!(s, "LEVEL NORM := {};", doc.level_norm);
    let _ = writeln!(s, "HECKE FIELD := {};", e.poly().display_in("x"));
    if !hints.is_empty() {
        let _ = writeln!(s, "HINTS := [{}];", hints.iter().map(u64::to_string).collect::<Vec<_>>().join(", "));
    }
    let basis: Vec<String> = doc
        .twist_search_basis
        .iter()
        .map(|t| {
            let x = k.element(t.clone());
            if x.is_zero() { "0".into() } else { x.display_in("w") }
        })
        .collect();
    let _ = writeln!(s, "TWIST BASIS := [{}];", basis.join(", "));
    let _ = writeln!(s, "PRIMES := [\n  {}\n];", primes.join(",\n  "));
    let _ = writeln!(s, "HECKE EIGENVALUES := [\n  {}\n];", eigen.join(",\n  "));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::split_prime;
    use num_traits::Zero;

    const CUBIC: &str = "x^3 - x^2 - 2*x + 1";

    /// A two-prime snippet over the cubic field, built from its own splitting data.
    fn snippet(alpha_override: Option<&str>, second_ap: &str) -> String {
        let k = NumberField::from_i64(&[1, -2, -1, 1]).unwrap();
        let p13 = split_prime(&k, 13).unwrap();
        assert_eq!(p13.len(), 3);
        let (n0, p0, a0) = prime_generator(&k, &p13[1].label(), &[]).unwrap();
        let a0 = alpha_override.map(str::to_string).unwrap_or_else(|| a0.display_in("w"));
        format!(
            "// sample\nFIELD := {CUBIC};\nLEVEL NORM := 7;\nHECKE FIELD := x^2 - 2;\n\
             PRIMES := [[{n0}, {p0}, {a0}], [8, 2, 2]];\nHECKE EIGENVALUES := [e, {second_ap}];\n"
        )
    }

    #[test]
    fn imports_two_primes() {
        let doc = import_lmfdb_hmf(&snippet(None, "-1/2*e + 1")).unwrap();
        assert_eq!(doc.eigenvalues.len(), 2);
        assert_eq!(doc.eigenvalues[0].0, "2.0");
        assert_eq!(doc.eigenvalues[1].0, "13.1");
        assert_eq!(doc.eigenvalues[1].1, vec![Rational::zero(), Rational::from_integer(1.into())]);
    }

    #[test]
    fn import_errors() {
        assert!(matches!(import_lmfdb_hmf(&snippet(Some("w^5 + 100"), "1")), Err(IngestError::PrimeMatchFailed { entry: 0, .. })));
        assert!(matches!(
            import_lmfdb_hmf(&snippet(None, "[1, 2, 3]")),
            Err(IngestError::DegreeMismatch { entry: 1, expected: 2, found: 3 })
        ));
        match import_lmfdb_hmf("FIELD := x^3 - 2*x + ;\n") {
            Err(IngestError::Grammar { line, column, .. }) => assert_eq!((line, column), (1, 21)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(import_lmfdb_hmf("FIELD := x"), Err(IngestError::Grammar { .. })));
    }

    #[test]
    fn export_then_import_preserves_primes() {
        let doc = import_lmfdb_hmf(&snippet(None, "3")).unwrap();
        let again = import_lmfdb_hmf(&export_lmfdb_hmf(&doc).unwrap()).unwrap();
        assert_eq!(again, doc);
    }
}
