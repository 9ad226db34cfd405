//! Local Hilbert symbols: sign rule at real places, tame formula at odd
//! primes, and a bounded Hensel search for the conic at dyadic primes.

use std::collections::HashSet;

use crate::ideals::{valuation, LocalRing, PrimeIdeal};
use crate::numfield::NFElement;

use super::place::{Invariant, Place};
use super::BrauerError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolOptions {
    /// Added to `2e(2) + |v(a)| + |v(b)|` to get the dyadic search precision.
    pub dyadic_precision_extra: u32,
}

impl Default for SymbolOptions {
    fn default() -> Self {
        Self { dyadic_precision_extra: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    RealSigns,
    Tame,
    Conic { precision: u32 },
}

/// How one local invariant was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalWitness {
    pub place: Place,
    pub invariant: Invariant,
    pub method: Method,
}

fn check_nonzero(a: &NFElement, b: &NFElement) -> Result<(), BrauerError> {
    if a.is_zero() || b.is_zero() {
        return Err(BrauerError::ZeroEntry);
    }
    if !a.field().same(b.field()) {
        return Err(BrauerError::FieldMismatch);
    }
    Ok(())
}

/// `a·d²` with `d` the coordinate denominator: integral, same square class.
pub(crate) fn integralize(a: &NFElement) -> NFElement {
    let d = crate::arith::rational::from_bigint(a.denominator());
    a.scale(&(&d * &d))
}

fn real_sign(a: &NFElement, k: usize) -> Result<i8, BrauerError> {
    let signs = a.real_embedding_signs()?;
    signs.get(k).copied().ok_or(BrauerError::NoSuchPlace(format!("oo.{k}")))
}

fn real_place_solvable(a: &NFElement, b: &NFElement, k: usize) -> Result<bool, BrauerError> {
    Ok(real_sign(a, k)? > 0 || real_sign(b, k)? > 0)
}

/// Minimum search precision at which the conic oracle is decisive.
pub fn hensel_threshold(a: &NFElement, b: &NFElement, prime: &PrimeIdeal) -> Result<u32, BrauerError> {
    check_nonzero(a, b)?;
    let e2 = if prime.is_dyadic() { prime.e() } else { 0 };
    let va = valuation(a, prime)?.unsigned_abs() as u32;
    let vb = valuation(b, prime)?.unsigned_abs() as u32;
    Ok(2 * e2 + va + vb + 3)
}

/// Does `z² = a x² + b y²` have a nontrivial solution in `F_v`?
pub fn conic_solvable_oracle(a: &NFElement, b: &NFElement, v: &Place, precision: u32) -> Result<bool, BrauerError> {
    check_nonzero(a, b)?;
    let prime = match v {
        Place::Real(k) => return real_place_solvable(a, b, *k),
        Place::Finite(p) => p,
    };
    let required = hensel_threshold(a, b, prime)?;
    if precision < required {
        return Err(BrauerError::PrecisionBelowThreshold { required, given: precision });
    }
    let (a, b) = (integralize(a), integralize(b));
    let e2 = if prime.is_dyadic() { prime.e() } else { 0 };
    let alpha = valuation(&a, prime)? % 2;
    let beta = valuation(&b, prime)? % 2;
    // a solution mod P^n with n past twice the gradient valuation lifts
    let n = (2 * e2 + 2 * alpha.max(beta) as u32 + 1).min(precision);
    let ring = LocalRing::new(prime, n);
    let reduced = |x: &NFElement, parity: i64| -> Result<Vec<num_bigint::BigInt>, BrauerError> {
        let (u, _) = ring.unit_part(x)?;
        Ok(if parity == 1 { ring.mul(&u, ring.uniformizer()) } else { u })
    };
    let a1 = reduced(&a, alpha)?;
    let b1 = reduced(&b, beta)?;
    let reps = ring.representatives_mod_pn(n);
    let squares: HashSet<Vec<u64>> = reps.iter().map(|z| ring.key(&ring.mul(z, z), n)).collect();
    let is_square = |w: &[num_bigint::BigInt]| squares.contains(&ring.key(w, n));
    // primitive solutions have x a unit (scale to x = 1) or x ∈ P and y a unit
    if reps.iter().any(|y| is_square(&ring.add(&a1, &ring.mul(&b1, &ring.mul(y, y))))) {
        return Ok(true);
    }
    let xs = ring.representatives_mod_pn(n - 1);
    Ok(xs.iter().any(|r| {
        let x = ring.mul(r, ring.uniformizer());
        is_square(&ring.add(&ring.mul(&a1, &ring.mul(&x, &x)), &b1))
    }))
}

fn tame_symbol(a: &NFElement, b: &NFElement, prime: &PrimeIdeal) -> Result<i8, BrauerError> {
    let (a, b) = (integralize(a), integralize(b));
    let ring = LocalRing::new(prime, 1);
    let (ua, alpha) = ring.unit_part(&a)?;
    let (ub, beta) = ring.unit_part(&b)?;
    let chi = |u: &[num_bigint::BigInt], e: i64| if e % 2 == 0 { 1 } else { ring.quadratic_character(u) };
    let minus_one = ring.from_int(-1);
    Ok(chi(&minus_one, alpha * beta) * chi(&ua, beta) * chi(&ub, alpha))
}

pub fn local_invariant(a: &NFElement, b: &NFElement, v: &Place) -> Result<Invariant, BrauerError> {
    local_invariant_witnessed(a, b, v, &SymbolOptions::default()).map(|w| w.invariant)
}

pub fn local_invariant_witnessed(
    a: &NFElement,
    b: &NFElement,
    v: &Place,
    opts: &SymbolOptions,
) -> Result<LocalWitness, BrauerError> {
    check_nonzero(a, b)?;
    let half = |bad: bool| if bad { Invariant::Half } else { Invariant::Zero };
    let (invariant, method) = match v {
        Place::Real(k) => (half(!real_place_solvable(a, b, *k)?), Method::RealSigns),
        Place::Finite(p) if !p.is_dyadic() => (half(tame_symbol(a, b, p)? == -1), Method::Tame),
        Place::Finite(p) => {
            let precision = hensel_threshold(a, b, p)? - 3 + opts.dyadic_precision_extra;
            (half(!conic_solvable_oracle(a, b, v, precision)?), Method::Conic { precision })
        }
    };
    Ok(LocalWitness { place: v.clone(), invariant, method })
}
