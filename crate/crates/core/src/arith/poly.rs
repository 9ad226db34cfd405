//! Dense univariate polynomials over Q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, format_rational, Rational};
use super::ArithError;

/// Ascending coefficient list with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    /// `self(x + c)`
    pub fn shift(&self, c: &Rational) -> Self {
        self.compose(&Self::new(vec![c.clone(), Rational::one()]))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> Result<Rational, ArithError> {
        if self.is_zero() || other.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = Rational::one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return Ok(acc * num_traits::pow(b.lc(), m));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Ok(Rational::zero());
            }
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(b.lc(), m - r.deg());
            a = b;
            b = r;
        }
    }

    /// `Res(f, f') / lc(f)` with the usual sign `(-1)^{n(n-1)/2}`.
    pub fn discriminant(&self) -> Result<Rational, ArithError> {
        let n = self.degree().ok_or(ArithError::ZeroPolynomial)?;
        if n == 0 {
            return Ok(Rational::one());
        }
        let r = self.resultant(&self.derivative())?;
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
        Ok(sign * r / self.lc())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Yun's algorithm: monic `s_1, s_2, ...` with `monic(self) = prod s_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = fp.div_exact(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.deg() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).expect("gcd divides");
            if b.deg() == 0 {
                break;
            }
            c = d.div_exact(&g).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Positive rational `c` and primitive integer polynomial `p` with
    /// `self = c * p` and `lc(p) > 0`.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// Deterministic ordering key: degree, then ascending coefficients.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (i, mag.is_one()) {
                (0, _) => format_rational(&mag),
                (1, true) => var.to_string(),
                (1, false) => format!("{}*{}", format_rational(&mag), var),
                (_, true) => format!("{}^{}", var, i),
                (_, false) => format!("{}*{}^{}", format_rational(&mag), var, i),
            };
            parts.push((sign, body));
        }
        let mut s = String::new();
        for (k, (sign, body)) in parts.into_iter().enumerate() {
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(if sign == "-" { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: Self) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: Self) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: Self) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Monic gcd of two polynomials over Q.
pub fn poly_gcd(f: &RationalPoly, g: &RationalPoly) -> RationalPoly {
    f.gcd(g)
}

/// Resultant of two nonzero polynomials.
pub fn resultant(f: &RationalPoly, g: &RationalPoly) -> Result<Rational, ArithError> {
    f.resultant(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[2, 4]), &RationalPoly::zero()), RationalPoly::new(vec![rat(1, 2), int(1)]));
        assert_eq!(poly_gcd(&p(&[1, 0, 1]), &p(&[-2, 0, 1])), RationalPoly::one());
    }

    #[test]
    fn resultant_examples() {
        let (a, b) = (int(3), int(-5));
        let fa = RationalPoly::new(vec![-a.clone(), int(1)]);
        let fb = RationalPoly::new(vec![-b.clone(), int(1)]);
        assert_eq!(resultant(&fa, &fb).unwrap(), a - b);
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), int(0));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap(), int(1));
        assert!(matches!(resultant(&p(&[1]), &RationalPoly::zero()), Err(ArithError::ZeroPolynomial)));
    }

    #[test]
    fn discriminant_quadratic_and_cubic() {
        assert_eq!(p(&[-2, 0, 1]).discriminant().unwrap(), int(8));
        assert_eq!(p(&[1, -2, -1, 1]).discriminant().unwrap(), int(49));
    }

    #[test]
    fn squarefree_decomposition_reconstructs() {
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[1, 0, 1]).pow(2)) * &p(&[5, 1]);
        let dec = f.squarefree_decomposition();
        let mut prod = RationalPoly::one();
        for (s, e) in &dec {
            prod = &prod * &s.pow(*e);
        }
        assert_eq!(prod, f.monic());
        assert_eq!(dec.iter().map(|d| d.1).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn primitive_part_sign_and_content() {
        let f = RationalPoly::new(vec![rat(1, 2), rat(-3, 4)]);
        let (c, prim) = f.primitive_part();
        assert_eq!(c, rat(-1, 4));
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(3)]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, -1, 1]).to_string(), "x^3 - x^2 - 2*x + 1");
        assert_eq!(RationalPoly::new(vec![rat(-1, 2)]).to_string(), "-1/2");
    }
}
