//! Dedekind–Kummer splitting of rational primes.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::fp::factor_poly_mod_p;
use crate::arith::hensel::{from_fp, to_fp};
use crate::arith::rational::{is_prime_u64, valuation_int};
use crate::arith::PrimeFieldPoly;
use crate::numfield::NumberField;

use super::IdealError;

/// A prime of the ring of integers above `p`, corresponding to the factor
/// `g^e` of the defining polynomial modulo `p`.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    field: NumberField,
    p: u64,
    g: PrimeFieldPoly,
    e: u32,
    index: usize,
    /// Integer coefficients of the defining polynomial.
    fint: Arc<Vec<BigInt>>,
    /// `g_j^{e_j}` for every prime above `p`, in label order.
    blocks: Arc<Vec<PrimeFieldPoly>>,
}

impl PrimeIdeal {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Local factor `g` (monic irreducible mod p).
    pub fn residue_poly(&self) -> &PrimeFieldPoly {
        &self.g
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.g.deg() as u32
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn label(&self) -> String {
        format!("{}.{}", self.p, self.index)
    }

    pub fn is_dyadic(&self) -> bool {
        self.p == 2
    }

    /// Size of the residue field.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.p).pow(self.f())
    }

    pub(crate) fn fint(&self) -> &[BigInt] {
        &self.fint
    }

    pub(crate) fn blocks(&self) -> &[PrimeFieldPoly] {
        &self.blocks
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.index == o.index && self.field.same(&o.field)
    }
}

impl Eq for PrimeIdeal {}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.p, self.index).cmp(&(o.p, o.index))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parse `"p.i"`.
pub fn parse_label(s: &str) -> Result<(u64, usize), IdealError> {
    let bad = || IdealError::BadLabel(s.to_string());
    let (p, i) = s.split_once('.').ok_or_else(bad)?;
    let valid = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) && (t == "0" || !t.starts_with('0'));
    if !valid(p) || !valid(i) {
        return Err(bad());
    }
    Ok((p.parse().map_err(|_| bad())?, i.parse().map_err(|_| bad())?))
}

pub(crate) fn integral_coeffs(field: &NumberField) -> Result<Vec<BigInt>, IdealError> {
    let poly = field.poly();
    if !poly.is_monic() || !poly.is_integral() {
        return Err(IdealError::NonIntegralPolynomial);
    }
    Ok(poly.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// Dedekind's criterion: is `Z[θ]` maximal at `p`?
pub fn dedekind_p_maximal(fint: &[BigInt], factors: &[(PrimeFieldPoly, u32)], p: u64) -> bool {
    let one = PrimeFieldPoly::one(p);
    let g = factors.iter().fold(one.clone(), |acc, (gi, _)| acc.mul(gi));
    let h = factors.iter().fold(one.clone(), |acc, (gi, ei)| {
        (1..*ei).fold(acc, |a, _| a.mul(gi))
    });
    let repeated = factors
        .iter()
        .filter(|(_, e)| *e >= 2)
        .fold(one, |acc, (gi, _)| acc.mul(gi));
    if repeated.deg() == 0 {
        return true;
    }
    let gz = from_fp(&g);
    let hz = from_fp(&h);
    let mut prod = vec![BigInt::zero(); gz.len() + hz.len() - 1];
    for (i, a) in gz.iter().enumerate() {
        for (j, b) in hz.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    let pb = BigInt::from(p);
    let n = fint.len().max(prod.len());
    let diff: Vec<BigInt> = (0..n)
        .map(|i| {
            let a = fint.get(i).cloned().unwrap_or_default();
            let b = prod.get(i).cloned().unwrap_or_default();
            let d = a - b;
            debug_assert!((&d % &pb).is_zero());
            d / &pb
        })
        .collect();
    let fbar = to_fp(&diff, p);
    fbar.gcd(&repeated).deg() == 0
}

pub fn split_prime(field: &NumberField, p: u64) -> Result<Vec<PrimeIdeal>, IdealError> {
    split_prime_with_hints(field, p, &[])
}

/// Primes above `p`. `hints` lists rational primes known not to divide the
/// index of `Z[θ]`.
pub fn split_prime_with_hints(field: &NumberField, p: u64, hints: &[u64]) -> Result<Vec<PrimeIdeal>, IdealError> {
    if !is_prime_u64(p) {
        return Err(IdealError::NotPrime(p));
    }
    let fint = integral_coeffs(field)?;
    let fp = to_fp(&fint, p);
    let factors = factor_poly_mod_p(&fp).expect("monic polynomial is nonzero mod p");
    let disc = field.poly_discriminant().to_integer();
    let safe = disc.is_zero() || valuation_int(&disc, p) < 2;
    if !safe && !hints.contains(&p) && !dedekind_p_maximal(&fint, &factors, p) {
        return Err(IdealError::IndexDivisorUnsupported { p });
    }
    let blocks: Vec<PrimeFieldPoly> = factors
        .iter()
        .map(|(g, e)| (1..*e).fold(g.clone(), |acc, _| acc.mul(g)))
        .collect();
    let fint = Arc::new(fint);
    let blocks = Arc::new(blocks);
    Ok(factors
        .into_iter()
        .enumerate()
        .map(|(index, (g, e))| PrimeIdeal {
            field: field.clone(),
            p,
            g,
            e,
            index,
            fint: fint.clone(),
            blocks: blocks.clone(),
        })
        .collect())
}

/// The prime with the given `"p.i"` label.
pub fn prime_by_label(field: &NumberField, label: &str, hints: &[u64]) -> Result<PrimeIdeal, IdealError> {
    let (p, i) = parse_label(label)?;
    split_prime_with_hints(field, p, hints)?
        .into_iter()
        .nth(i)
        .ok_or_else(|| IdealError::UnknownLabel(label.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> NumberField {
        NumberField::from_i64(&[1, 0, 1]).unwrap()
    }

    #[test]
    fn worked_examples() {
        let k = gauss();
        let ps = split_prime(&k, 5).unwrap();
        assert_eq!(ps.iter().map(|p| p.label()).collect::<Vec<_>>(), vec!["5.0", "5.1"]);
        assert!(ps.iter().all(|p| p.e() == 1 && p.f() == 1));
        let ps = split_prime(&k, 3).unwrap();
        assert_eq!((ps.len(), ps[0].e(), ps[0].f()), (1, 1, 2));
        let ps = split_prime(&k, 2).unwrap();
        assert_eq!((ps.len(), ps[0].e(), ps[0].f()), (1, 2, 1));
    }

    #[test]
    fn index_divisors() {
        // x^2 - 5: Z[sqrt5] has index 2
        let k = NumberField::from_i64(&[-5, 0, 1]).unwrap();
        assert_eq!(split_prime(&k, 2), Err(IdealError::IndexDivisorUnsupported { p: 2 }));
        assert!(split_prime_with_hints(&k, 2, &[2]).is_ok());
        // x^2 - 2: 2 | disc = 8 twice but Z[sqrt2] is maximal
        let k = NumberField::from_i64(&[-2, 0, 1]).unwrap();
        let ps = split_prime(&k, 2).unwrap();
        assert_eq!((ps.len(), ps[0].e()), (1, 2));
        // Z[sqrt-3] has index 2
        let k = NumberField::from_i64(&[3, 0, 1]).unwrap();
        assert!(split_prime(&k, 2).is_err());
        assert_eq!(split_prime(&k, 4), Err(IdealError::NotPrime(4)));
    }

    #[test]
    fn labels() {
        assert_eq!(parse_label("5.0"), Ok((5, 0)));
        assert_eq!(parse_label("13.12"), Ok((13, 12)));
        for bad in ["5", "5.", ".0", "05.1", "5.01", "a.b", "-5.0"] {
            assert!(parse_label(bad).is_err(), "{bad}");
        }
        let k = gauss();
        assert_eq!(prime_by_label(&k, "5.1", &[]).unwrap().label(), "5.1");
        assert!(prime_by_label(&k, "5.2", &[]).is_err());
    }
}
