use std::collections::BTreeSet;
use std::fmt;

use crate::ideals::PrimeIdeal;
use crate::numfield::NumberField;

use super::BrauerError;

/// A place of a number field: a prime ideal or a real embedding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(PrimeIdeal),
    /// Index into the real roots of the defining polynomial, ascending.
    Real(usize),
}

impl Place {
    pub fn label(&self) -> String {
        match self {
            Place::Finite(p) => p.label(),
            Place::Real(k) => format!("oo.{k}"),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real(_))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Local invariant of a 2-torsion Brauer class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Zero,
    Half,
}

impl Invariant {
    pub fn is_half(self) -> bool {
        self == Invariant::Half
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Zero => "0",
            Invariant::Half => "1/2",
        })
    }
}

/// An element of Br(F)[2], stored as the set of places with invariant 1/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerClass {
    field: NumberField,
    ramified: BTreeSet<Place>,
}

impl BrauerClass {
    pub fn trivial(field: &NumberField) -> Self {
        Self { field: field.clone(), ramified: BTreeSet::new() }
    }

    /// Checks that the support is even.
    pub fn from_places<I: IntoIterator<Item = Place>>(field: &NumberField, places: I) -> Result<Self, BrauerError> {
        let class = Self { field: field.clone(), ramified: places.into_iter().collect() };
        if class.ramified.len() % 2 == 1 {
            return Err(BrauerError::ReciprocityViolation { support: class.labels() });
        }
        Ok(class)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn is_trivial(&self) -> bool {
        self.ramified.is_empty()
    }

    pub fn ramified_places(&self) -> impl Iterator<Item = &Place> {
        self.ramified.iter()
    }

    pub fn invariant_at(&self, v: &Place) -> Invariant {
        if self.ramified.contains(v) {
            Invariant::Half
        } else {
            Invariant::Zero
        }
    }

    /// Finite places first by (p, index), then real places.
    pub fn labels(&self) -> Vec<String> {
        self.ramified.iter().map(Place::label).collect()
    }
}

/// Sum in Br(F): symmetric difference of supports.
pub fn class_product(c1: &BrauerClass, c2: &BrauerClass) -> Result<BrauerClass, BrauerError> {
    if !c1.field.same(&c2.field) {
        return Err(BrauerError::FieldMismatch);
    }
    Ok(BrauerClass {
        field: c1.field.clone(),
        ramified: c1.ramified.symmetric_difference(&c2.ramified).cloned().collect(),
    })
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::split_prime;

    #[test]
    fn product_is_symmetric_difference() {
        let q = NumberField::rationals();
        let p = |n| Place::Finite(split_prime(&q, n).unwrap().remove(0));
        let c1 = BrauerClass::from_places(&q, [p(2), p(3)]).unwrap();
        let c2 = BrauerClass::from_places(&q, [p(3), Place::Real(0)]).unwrap();
        let s = class_product(&c1, &c2).unwrap();
        assert_eq!(s.labels(), vec!["2.0", "oo.0"]);
        assert!(class_product(&c1, &c1).unwrap().is_trivial());
        assert_eq!(class_product(&c1, &BrauerClass::trivial(&q)).unwrap(), c1);
        let k = NumberField::from_i64(&[-2, 0, 1]).unwrap();
        assert_eq!(class_product(&c1, &BrauerClass::trivial(&k)), Err(BrauerError::FieldMismatch));
        assert!(matches!(BrauerClass::from_places(&q, [p(5)]), Err(BrauerError::ReciprocityViolation { .. })));
    }
}
