//! Helpers around `BigRational` and `BigInt`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(qs: I) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(q: &Rational, p: u64) -> i64 {
    valuation_int(q.numer(), p) as i64 - valuation_int(q.denom(), p) as i64
}

/// Reduce a rational with denominator prime to `p` into `[0, p)`.
pub fn reduce_mod_p(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&pb).to_u64()?;
    Some(crate::arith::fp::mul_mod(n, crate::arith::fp::inv_mod(d, p), p))
}

/// Prime factorization of |n|, n nonzero. Keys ascending.
pub fn factor_integer(n: &BigInt) -> BTreeMap<BigInt, usize> {
    let n = n.abs();
    let mut out = BTreeMap::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mag: BigUint = n.to_biguint().expect("absolute value");
    if let Some(small) = mag.to_u64() {
        for (p, e) in num_prime::nt_funcs::factorize64(small) {
            out.insert(BigInt::from(p), e);
        }
        return out;
    }
    let (found, rest) = num_prime::nt_funcs::factors(mag, None);
    for (p, e) in found {
        out.insert(BigInt::from_biguint(Sign::Plus, p), e);
    }
    if let Some(rest) = rest {
        // unsplit cofactors; split_prime rejects them as non-prime
        for c in rest {
            *out.entry(BigInt::from_biguint(Sign::Plus, c)).or_insert(0) += 1;
        }
    }
    out
}

pub fn is_prime_u64(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

/// Squarefree part of a nonzero integer, sign kept.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor_integer(n) {
        if e % 2 == 1 {
            out *= p;
        }
    }
    out
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rational_is_square(q: &Rational) -> bool {
    exact_sqrt(q.numer()).is_some() && exact_sqrt(q.denom()).is_some()
}
