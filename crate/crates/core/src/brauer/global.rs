use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive};

use crate::arith::rational::factor_integer;
use crate::ideals::split_prime;
use crate::numfield::{norm_compositum, NFElement, Tower};

use super::local::{integralize, local_invariant_witnessed, LocalWitness, SymbolOptions};
use super::place::{BrauerClass, Place};
use super::BrauerError;

/// Places where `(a, b)` can be ramified: real places, primes above 2, and
/// primes dividing the norms of the integral representatives.
pub fn candidate_places(a: &NFElement, b: &NFElement) -> Result<Vec<Place>, BrauerError> {
    let field = a.field();
    let mut rational: BTreeSet<u64> = BTreeSet::from([2]);
    for x in [a, b] {
        let n = integralize(x).norm().to_integer();
        for p in factor_integer(&n.abs()).into_keys() {
            rational.insert(p.to_u64().ok_or_else(|| BrauerError::PrimeOutOfRange(p.to_string()))?);
        }
    }
    let mut places = Vec::new();
    for p in rational {
        places.extend(split_prime(field, p)?.into_iter().map(Place::Finite));
    }
    places.extend((0..field.real_place_count()).map(Place::Real));
    Ok(places)
}

pub fn hilbert_symbol_global(a: &NFElement, b: &NFElement) -> Result<BrauerClass, BrauerError> {
    hilbert_symbol_witnessed(a, b, &SymbolOptions::default()).map(|(c, _)| c)
}

/// The class of `(a, b)_F` together with the local computation at every
/// candidate place. Fails if reciprocity does not hold.
pub fn hilbert_symbol_witnessed(
    a: &NFElement,
    b: &NFElement,
    opts: &SymbolOptions,
) -> Result<(BrauerClass, Vec<LocalWitness>), BrauerError> {
    if a.is_zero() || b.is_zero() {
        return Err(BrauerError::ZeroEntry);
    }
    if !a.field().same(b.field()) {
        return Err(BrauerError::FieldMismatch);
    }
    let witnesses = candidate_places(a, b)?
        .iter()
        .map(|v| local_invariant_witnessed(a, b, v, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let ramified = witnesses.iter().filter(|w| w.invariant.is_half()).map(|w| w.place.clone());
    let class = BrauerClass::from_places(a.field(), ramified)?;
    Ok((class, witnesses))
}

/// `cor_{FK/F}(t, b)_{FK} = (N_{FK/F}(t), b)_F`.
pub fn corestrict_symbol(t: &NFElement, b: &NFElement, tower: &Tower) -> Result<BrauerClass, BrauerError> {
    corestrict_symbol_witnessed(t, b, tower, &SymbolOptions::default()).map(|(c, _)| c)
}

pub fn corestrict_symbol_witnessed(
    t: &NFElement,
    b: &NFElement,
    tower: &Tower,
    opts: &SymbolOptions,
) -> Result<(BrauerClass, Vec<LocalWitness>), BrauerError> {
    if t.is_zero() || b.is_zero() {
        return Err(BrauerError::ZeroEntry);
    }
    let n = norm_compositum(t, tower)?;
    hilbert_symbol_witnessed(&n, b, opts)
}
