//! Polynomials over a prime field F_p and their factorization
//! (squarefree split, distinct-degree, then Cantor–Zassenhaus equal-degree).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ArithError;

/// Default seed for the randomized equal-degree splitting.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit mod a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Polynomial over F_p, ascending residues in `[0, p)`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrimeFieldPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimeFieldPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(p, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(p, (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        if self.is_zero() || o.is_zero() {
            return Self::zero(p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(p), self.clone());
        }
        let dd = d.deg();
        let inv = inv_mod(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = sub_mod(r[i + j], mul_mod(c, dc, p), p);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// `self(g) mod m`
    pub fn compose_mod(&self, g: &Self, m: &Self) -> Self {
        let p = self.p;
        let mut acc = Self::zero(p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::new(p, vec![c])).rem(m);
        }
        acc
    }

    /// Ordering used for deterministic factor lists: degree, then ascending coefficients.
    pub fn cmp_canonical(&self, o: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.cmp(&o.coeffs))
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        // a^(1/p) = a in F_p
        Self::new(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }

    /// Irreducibility check via gcd with `x^{p^d} - x` for every `d <= deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.deg();
        if self.is_zero() || n == 0 {
            return false;
        }
        let f = self.monic();
        let p = BigUint::from(self.p);
        let x = Self::x(self.p);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(&p, &f);
            if !f.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for PrimeFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ints: Vec<i64> = self.coeffs.iter().map(|&c| c as i64).collect();
        write!(
            f,
            "{} (mod {})",
            super::poly::RationalPoly::from_i64(&ints),
            self.p
        )
    }
}

/// Factor a nonzero polynomial mod p into monic irreducibles with multiplicity.
///
/// Output is sorted by degree and then by ascending coefficient list, so the
/// seed only influences the running time, never the result.
pub fn factor_poly_mod_p(f: &PrimeFieldPoly) -> Result<Vec<(PrimeFieldPoly, u32)>, ArithError> {
    factor_poly_mod_p_seeded(f, DEFAULT_SEED)
}

pub fn factor_poly_mod_p_seeded(
    f: &PrimeFieldPoly,
    seed: u64,
) -> Result<Vec<(PrimeFieldPoly, u32)>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ f.p);
    let mut out = Vec::new();
    for (sqf, mult) in squarefree_mod_p(&f.monic()) {
        for (g, d) in distinct_degree(&sqf) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Squarefree decomposition over F_p (handles p-th powers).
fn squarefree_mod_p(f: &PrimeFieldPoly) -> Vec<(PrimeFieldPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, e) in squarefree_mod_p(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.deg() > 0 {
        for (g, e) in squarefree_mod_p(&c.pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &PrimeFieldPoly) -> Vec<(PrimeFieldPoly, usize)> {
    let p = f.p;
    let pb = BigUint::from(p);
    let x = PrimeFieldPoly::x(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pb, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest.monic(), n));
    }
    out
}

fn random_poly(p: u64, deg: usize, rng: &mut ChaCha8Rng) -> PrimeFieldPoly {
    PrimeFieldPoly::new(p, (0..deg).map(|_| rng.gen_range(0..p)).collect())
}

/// Cantor–Zassenhaus equal-degree splitting.
fn equal_degree(f: &PrimeFieldPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<PrimeFieldPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    loop {
        let a = random_poly(p, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let q = BigUint::from(p).pow(d as u32);
            let e: BigUint = (q - BigUint::one()) >> 1;
            a.pow_mod(&e, f).sub(&PrimeFieldPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> PrimeFieldPoly {
        PrimeFieldPoly::from_i64(p, c)
    }

    fn product(fs: &[(PrimeFieldPoly, u32)], p: u64) -> PrimeFieldPoly {
        fs.iter().fold(PrimeFieldPoly::one(p), |acc, (g, e)| {
            (0..*e).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn worked_examples() {
        let f = factor_poly_mod_p(&fp(5, &[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(fp(5, &[2, 1]), 1), (fp(5, &[3, 1]), 1)]);
        let f = factor_poly_mod_p(&fp(3, &[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(fp(3, &[1, 0, 1]), 1)]);
        let f = factor_poly_mod_p(&fp(3, &[0, -1, 0, 1])).unwrap();
        assert_eq!(f, vec![(fp(3, &[0, 1]), 1), (fp(3, &[1, 1]), 1), (fp(3, &[2, 1]), 1)]);
        assert!(matches!(factor_poly_mod_p(&fp(7, &[7])), Err(ArithError::ZeroPolynomial)));
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        // (x+1)^2 mod 2, and a cube times x mod 3
        let f = factor_poly_mod_p(&fp(2, &[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(fp(2, &[1, 1]), 2)]);
        let g = fp(3, &[1, 1, 0, 1]);
        let h = g.mul(&g).mul(&g).mul(&fp(3, &[0, 1]));
        let f = factor_poly_mod_p(&h).unwrap();
        assert_eq!(product(&f, 3), h.monic());
        assert!(f.iter().all(|(g, _)| g.is_irreducible()));
    }

    #[test]
    fn splits_over_f2_with_trace_map() {
        // x^4 + x = x (x + 1) (x^2 + x + 1)
        let f = factor_poly_mod_p(&fp(2, &[0, 1, 0, 0, 1])).unwrap();
        assert_eq!(f.len(), 3);
        // product of all irreducible cubics over F_2: x^6 + x^5 + x^4 + x^3 + x^2 + x + 1
        let f = factor_poly_mod_p(&fp(2, &[1, 1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(f, vec![(fp(2, &[1, 0, 1, 1]), 1), (fp(2, &[1, 1, 0, 1]), 1)]);
    }

    #[test]
    fn seed_does_not_change_output() {
        let f = fp(101, &[3, 0, 7, 0, 0, 1, 9, 0, 1]);
        let a = factor_poly_mod_p_seeded(&f, 1).unwrap();
        let b = factor_poly_mod_p_seeded(&f, 99).unwrap();
        assert_eq!(a, b);
    }
}
