use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::arith::{factor_rational_poly, Rational, RationalPoly};

use super::element::NFElement;
use super::sturm::{isolate_real_roots, RootInterval, SturmSequence};
use super::NumfieldError;

#[derive(Debug)]
struct FieldData {
    poly: RationalPoly,
    discriminant: Rational,
    sturm: SturmSequence,
    real_roots: Vec<RootInterval>,
}

/// `Q[x]/(f)` for a monic irreducible `f`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    pub fn new(poly: RationalPoly) -> Result<Self, NumfieldError> {
        if poly.degree().unwrap_or(0) == 0 || !poly.is_monic() {
            return Err(NumfieldError::NotMonic);
        }
        if !factor_rational_poly(&poly)?.is_irreducible() {
            return Err(NumfieldError::Reducible(poly.to_string()));
        }
        Ok(Self::new_unchecked(poly))
    }

    /// Skips the irreducibility check; for polynomials known to be minimal.
    pub(crate) fn new_unchecked(poly: RationalPoly) -> Self {
        debug_assert!(poly.is_monic());
        let discriminant = poly.discriminant().expect("nonzero polynomial");
        let sturm = SturmSequence::new(&poly);
        let real_roots = isolate_real_roots(&poly);
        Self(Arc::new(FieldData { poly, discriminant, sturm, real_roots }))
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, NumfieldError> {
        Self::new(RationalPoly::from_i64(coeffs))
    }

    pub fn rationals() -> Self {
        Self::new_unchecked(RationalPoly::x())
    }

    pub fn poly(&self) -> &RationalPoly {
        &self.0.poly
    }

    pub fn degree(&self) -> usize {
        self.0.poly.deg()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn poly_discriminant(&self) -> &Rational {
        &self.0.discriminant
    }

    pub fn sturm(&self) -> &SturmSequence {
        &self.0.sturm
    }

    pub fn real_root_intervals(&self) -> &[RootInterval] {
        &self.0.real_roots
    }

    pub fn real_place_count(&self) -> usize {
        self.0.real_roots.len()
    }

    pub fn is_totally_real(&self) -> bool {
        self.real_place_count() == self.degree()
    }

    /// Same presentation; pointer equality short-circuits.
    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }

    pub fn zero(&self) -> NFElement {
        NFElement::from_rational(self, Rational::from_integer(0.into()))
    }

    pub fn one(&self) -> NFElement {
        NFElement::from_rational(self, Rational::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> NFElement {
        NFElement::from_poly(self, &RationalPoly::x())
    }

    pub fn element(&self, coords: Vec<Rational>) -> NFElement {
        NFElement::new(self, coords)
    }

    pub fn elem(&self, coords: &[i64]) -> NFElement {
        NFElement::from_poly(self, &RationalPoly::from_i64(coords))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for NumberField {}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.0.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(NumberField::from_i64(&[-2, 0, 1]).is_ok());
        assert!(matches!(NumberField::from_i64(&[-1, 0, 1]), Err(NumfieldError::Reducible(_))));
        assert!(matches!(NumberField::from_i64(&[-2, 0, 2]), Err(NumfieldError::NotMonic)));
        assert!(matches!(NumberField::from_i64(&[5]), Err(NumfieldError::NotMonic)));
    }

    #[test]
    fn real_places() {
        assert_eq!(NumberField::from_i64(&[1, 0, 1]).unwrap().real_place_count(), 0);
        let k = NumberField::from_i64(&[1, -2, -1, 1]).unwrap();
        assert!(k.is_totally_real());
        assert_eq!(*k.poly_discriminant(), crate::arith::rational::int(49));
        assert_eq!(NumberField::rationals().real_place_count(), 1);
    }
}
