//! Polynomials over a number field and Trager factorization.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;

use crate::arith::rational::{int, rational_is_square};
use crate::arith::{factor_rational_poly, Rational, RationalPoly};

use super::element::NFElement;
use super::field::NumberField;
use super::NumfieldError;

/// Polynomial with coefficients in a number field, ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfPoly {
    field: NumberField,
    coeffs: Vec<NFElement>,
}

impl NfPoly {
    pub fn new(field: &NumberField, mut coeffs: Vec<NFElement>) -> Self {
        while coeffs.last().is_some_and(NFElement::is_zero) {
            coeffs.pop();
        }
        Self { field: field.clone(), coeffs }
    }

    pub fn zero(field: &NumberField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(c: NFElement) -> Self {
        let f = c.field().clone();
        Self::new(&f, vec![c])
    }

    /// `x + c`
    pub fn linear(c: NFElement) -> Self {
        let f = c.field().clone();
        Self::new(&f, vec![c, f.one()])
    }

    pub fn from_rational_poly(field: &NumberField, p: &RationalPoly) -> Self {
        Self::new(
            field,
            p.coeffs().iter().map(|c| NFElement::from_rational(field, c.clone())).collect(),
        )
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[NFElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> NFElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> NFElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The polynomial with rational coefficients, if all coefficients are rational.
    pub fn to_rational_poly(&self) -> Option<RationalPoly> {
        self.coeffs
            .iter()
            .map(NFElement::as_rational)
            .collect::<Option<Vec<_>>>()
            .map(RationalPoly::new)
    }

    pub fn scale(&self, c: &NFElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inverse().expect("nonzero leading coefficient"))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.field, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let inv = d.lc().inverse().expect("nonzero");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * dc);
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(&self.field, q), Self::new(&self.field, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &NFElement) -> NFElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Resultant over the coefficient field.
    pub fn resultant(&self, other: &Self) -> Result<NFElement, NumfieldError> {
        if self.is_zero() || other.is_zero() {
            return Err(NumfieldError::ZeroElement);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = self.field.one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return Ok(&acc * &b.lc().pow(m as u32));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Ok(self.field.zero());
            }
            if (m * n) % 2 == 1 {
                acc = -&acc;
            }
            acc = &acc * &b.lc().pow((m - r.deg()) as u32);
            a = b;
            b = r;
        }
    }

    pub fn cmp_canonical(&self, o: &Self) -> Ordering {
        self.coeffs.len().cmp(&o.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&o.coeffs) {
                let c = a.coords().cmp(b.coords());
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }

    /// Text form with coefficients written in `w` and the variable `x`.
    pub fn display_with(&self, coeff_var: &str, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.display_in(coeff_var);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(if i == 0 {
                format!("({cs})")
            } else if c.is_one() {
                mono
            } else {
                format!("({cs})*{mono}")
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for NfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("a", "x"))
    }
}

/// One irreducible factor `h` of `f` over F together with
/// `N(x) = Norm_{F/Q}(h(x - k·α))`, the minimal polynomial of `β + kα`
/// for a root `β` of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfFactor {
    pub factor: NfPoly,
    pub norm: RationalPoly,
}

/// Newton interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> RationalPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = RationalPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = RationalPoly::new(vec![-xs[i].clone(), Rational::one()]);
        acc = &(&acc * &lin) + &RationalPoly::constant(dd[i].clone());
    }
    acc
}

/// `Res_y(m(y), f(x - k y))` as a polynomial in x.
fn shifted_norm(m: &RationalPoly, f: &RationalPoly, k: i64) -> RationalPoly {
    let total = m.deg() * f.deg();
    let xs: Vec<Rational> = (0..=total as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x0| {
            let lin = RationalPoly::new(vec![x0.clone(), int(-k)]);
            m.resultant(&f.compose(&lin)).expect("nonzero")
        })
        .collect();
    interpolate(&xs, &ys)
}

fn shift_sequence() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
}

/// Trager factorization of a squarefree `f ∈ Q[x]` over `field`.
/// Returns the shift `k` and the factors in canonical order.
pub fn trager_factor(f: &RationalPoly, field: &NumberField) -> Result<(i64, Vec<NfFactor>), NumfieldError> {
    if f.is_zero() {
        return Err(NumfieldError::ZeroElement);
    }
    if !f.is_squarefree() {
        return Err(NumfieldError::NotSquarefree);
    }
    let f = f.monic();
    let m = field.poly();
    let n = field.degree();
    let mut out = Vec::new();
    if n == 1 {
        let fac = factor_rational_poly(&f)?;
        for (g, _) in fac.factors {
            // N(x) = g(x - k·root) with k = 0
            out.push(NfFactor { factor: NfPoly::from_rational_poly(field, &g), norm: g });
        }
        return Ok((0, out));
    }
    let alpha = field.generator();
    for k in shift_sequence().skip(1) {
        let big_n = shifted_norm(m, &f, k);
        if !big_n.is_squarefree() {
            continue;
        }
        let fk = NfPoly::from_rational_poly(field, &f);
        let shift = NfPoly::linear(alpha.scale(&int(k)));
        for (ni, _) in factor_rational_poly(&big_n)?.factors {
            let lifted = NfPoly::from_rational_poly(field, &ni).compose(&shift);
            let h = fk.gcd(&lifted);
            debug_assert!(h.deg() >= 1);
            out.push(NfFactor { factor: h, norm: ni });
        }
        out.sort_by(|a, b| a.factor.cmp_canonical(&b.factor));
        return Ok((k, out));
    }
    unreachable!("shift sequence is infinite")
}

/// Monic irreducible factors of a squarefree `f ∈ Q[x]` over `field`.
pub fn factor_over_numberfield(f: &RationalPoly, field: &NumberField) -> Result<Vec<NfPoly>, NumfieldError> {
    Ok(trager_factor(f, field)?.1.into_iter().map(|x| x.factor).collect())
}

/// Roots in `field` of a nonzero `f ∈ Q[x]`, in canonical order.
pub fn roots_in_field(f: &RationalPoly, field: &NumberField) -> Result<Vec<NFElement>, NumfieldError> {
    let sq = f.div_exact(&f.gcd(&f.derivative())).expect("gcd divides");
    let mut roots = Vec::new();
    for (g, _) in factor_rational_poly(&sq)?.factors {
        if field.degree() % g.deg() != 0 {
            continue;
        }
        for h in factor_over_numberfield(&g, field)? {
            if h.deg() == 1 {
                roots.push(-&h.coeff(0));
            }
        }
    }
    roots.sort_by(|a, b| a.coords().cmp(b.coords()));
    Ok(roots)
}

/// A square root of `a` in its field, if one exists.
pub fn sqrt_in_field(a: &NFElement) -> Result<Option<NFElement>, NumfieldError> {
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    let field = a.field();
    if !rational_is_square(&a.norm()) {
        return Ok(None);
    }
    if a.real_embedding_signs()?.iter().any(|&s| s < 0) {
        return Ok(None);
    }
    let m = a.min_poly();
    let m2 = m.compose(&RationalPoly::from_i64(&[0, 0, 1]));
    for r in roots_in_field(&m2, field)? {
        if r.square() == *a {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
