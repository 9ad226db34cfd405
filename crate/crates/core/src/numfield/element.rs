use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::rational::{common_denominator, format_rational};
use crate::arith::{Rational, RationalMatrix, RationalPoly};

use super::field::NumberField;
use super::sturm::sign_at_root;
use super::NumfieldError;

/// Element of a number field in the power basis `1, x, ..., x^{n-1}`.
#[derive(Clone, Debug)]
pub struct NFElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl NFElement {
    pub fn new(field: &NumberField, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), field.degree(), "coordinate length must equal field degree");
        Self { field: field.clone(), coords }
    }

    pub fn from_poly(field: &NumberField, p: &RationalPoly) -> Self {
        let r = if p.degree().is_some_and(|d| d >= field.degree()) {
            p.rem(field.poly())
        } else {
            p.clone()
        };
        let mut coords = r.into_coeffs();
        coords.resize(field.degree(), Rational::zero());
        Self { field: field.clone(), coords }
    }

    pub fn from_rational(field: &NumberField, q: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = q;
        Self { field: field.clone(), coords }
    }

    pub fn from_int(field: &NumberField, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_poly(&self) -> RationalPoly {
        RationalPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Least common multiple of coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        common_denominator(&self.coords)
    }

    fn check(&self, other: &Self) {
        assert!(self.field.same(&other.field), "elements belong to different fields");
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { field: self.field.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn inverse(&self) -> Result<Self, NumfieldError> {
        if self.is_zero() {
            return Err(NumfieldError::ZeroElement);
        }
        let (g, s, _) = self.to_poly().xgcd(self.field.poly());
        debug_assert!(g.deg() == 0);
        Ok(Self::from_poly(&self.field, &s.scale(&g.lc().recip())))
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumfieldError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// `N_{K/Q}(a)` as `Res(f, A)`.
    pub fn norm(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        self.field.poly().resultant(&self.to_poly()).expect("nonzero operands")
    }

    pub fn trace(&self) -> Rational {
        // diagonal of the multiplication matrix in the power basis
        let x = self.field.generator();
        let mut tr = Rational::zero();
        let mut xi = self.field.one();
        for i in 0..self.field.degree() {
            tr += &(self * &xi).coords[i];
            xi = &xi * &x;
        }
        tr
    }

    /// Monic minimal polynomial over Q, found as the first linear
    /// dependency among `1, a, a^2, ...`.
    pub fn min_poly(&self) -> RationalPoly {
        let mut powers = vec![self.field.one().coords];
        let mut cur = self.field.one();
        loop {
            cur = &cur * self;
            powers.push(cur.coords.clone());
            let kernel = RationalMatrix::from_columns(&powers).kernel();
            if let Some(v) = kernel.into_iter().next() {
                let lead = v.last().expect("nonempty").clone();
                return RationalPoly::new(v.into_iter().map(|c| c / &lead).collect());
            }
        }
    }

    /// Sign under each real embedding, ordered by ascending root.
    pub fn real_embedding_signs(&self) -> Result<Vec<i8>, NumfieldError> {
        if self.is_zero() {
            return Err(NumfieldError::ZeroElement);
        }
        let a = self.to_poly();
        Ok(self
            .field
            .real_root_intervals()
            .iter()
            .map(|iv| sign_at_root(self.field.poly(), iv, &a))
            .collect())
    }

    /// Evaluate a polynomial with rational coefficients at this element.
    pub fn eval_poly(&self, p: &RationalPoly) -> Self {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Self::from_rational(&self.field, c.clone());
        }
        acc
    }

    pub fn display_in(&self, var: &str) -> String {
        self.to_poly().display_in(var)
    }

    /// Canonical coordinate strings.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coords == other.coords
    }
}

impl Eq for NFElement {}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, o: &NFElement) -> NFElement {
        self.check(o);
        NFElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, o: &NFElement) -> NFElement {
        self.check(o);
        NFElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, o: &NFElement) -> NFElement {
        self.check(o);
        if self.is_rational() {
            return o.scale(&self.coords[0]);
        }
        if o.is_rational() {
            return self.scale(&o.coords[0]);
        }
        NFElement::from_poly(&self.field, &(&self.to_poly() * &o.to_poly()))
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}
