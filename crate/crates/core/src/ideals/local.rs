//! Completions at a prime: `O_P / p^k` presented as `Z[x] / (p^k, G_P)`
//! where `G_P` is the Hensel lift of the factor `g^e` of the defining
//! polynomial. Valid whenever `Z[θ]` is maximal at `p`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::hensel::{self, hensel_lift, ModPoly};
use crate::arith::rational::valuation_int;
use crate::arith::{PrimeFieldPoly, RationalPoly};
use crate::numfield::NFElement;

use super::prime::PrimeIdeal;
use super::IdealError;

/// Integral numerator and denominator: `a = A(θ) / d`.
fn split_denominator(a: &NFElement) -> (Vec<BigInt>, BigInt) {
    let d = a.denominator();
    let dq = crate::arith::rational::from_bigint(d.clone());
    let coeffs = a.coords().iter().map(|c| (c * &dq).to_integer()).collect();
    (coeffs, d)
}

fn lift_block(prime: &PrimeIdeal, k: u32) -> ModPoly {
    hensel_lift(prime.fint(), prime.blocks(), prime.p(), k).swap_remove(prime.index())
}

/// `v_P(a)` from the p-adic valuation of the local norm `Res(G_P, A)`.
pub fn valuation(a: &NFElement, prime: &PrimeIdeal) -> Result<i64, IdealError> {
    if a.is_zero() {
        return Err(IdealError::ZeroElement);
    }
    let p = prime.p();
    let (num, den) = split_denominator(a);
    let apoly = RationalPoly::from_ints(&num);
    let global = prime.field().poly().resultant(&apoly).expect("nonzero").to_integer();
    let k = valuation_int(&global, p) + 1;
    let g = RationalPoly::from_ints(&lift_block(prime, k));
    let local = g.resultant(&apoly).expect("nonzero").to_integer();
    debug_assert!(!local.is_zero());
    let v = valuation_int(&local, p);
    debug_assert_eq!(v % prime.f(), 0);
    Ok((v / prime.f()) as i64 - (prime.e() as i64) * valuation_int(&den, p) as i64)
}

/// `O_P / p^k`.
#[derive(Clone, Debug)]
pub struct LocalRing {
    prime: PrimeIdeal,
    prec: u32,
    modulus: BigInt,
    gpoly: ModPoly,
    pi: ModPoly,
    p_over_pi: ModPoly,
}

impl LocalRing {
    pub fn new(prime: &PrimeIdeal, prec: u32) -> Self {
        assert!(prec >= 1);
        let p = prime.p();
        let modulus = BigInt::from(p).pow(prec);
        let gpoly = lift_block(prime, prec);
        let (pi, p_over_pi) = if prime.e() == 1 {
            (vec![BigInt::from(p)], vec![BigInt::one()])
        } else {
            let gl = hensel::from_fp(prime.residue_poly());
            // v_P(g(θ)) = 1 when e ≥ 2 and Z[θ] is p-maximal
            let pi_global = NFElement::from_poly(prime.field(), &RationalPoly::from_ints(&gl));
            debug_assert_eq!(valuation(&pi_global, prime), Ok(1));
            let ratio = pi_global
                .inverse()
                .expect("uniformizer is nonzero")
                .scale(&crate::arith::rational::from_bigint(BigInt::from(p)));
            let mut ring = Self {
                prime: prime.clone(),
                prec,
                modulus: modulus.clone(),
                gpoly: gpoly.clone(),
                pi: Vec::new(),
                p_over_pi: Vec::new(),
            };
            let rho = ring.to_local(&ratio).expect("p / pi is P-integral");
            ring.pi = hensel::rem_monic(&gl, &gpoly, &modulus);
            ring.p_over_pi = rho;
            return ring;
        };
        Self { prime: prime.clone(), prec, modulus, gpoly, pi, p_over_pi }
    }

    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn uniformizer(&self) -> &ModPoly {
        &self.pi
    }

    pub fn one(&self) -> ModPoly {
        hensel::reduce(&[BigInt::one()], &self.modulus)
    }

    pub fn from_int(&self, n: i64) -> ModPoly {
        hensel::reduce(&[BigInt::from(n)], &self.modulus)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> ModPoly {
        hensel::add(a, b, &self.modulus)
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> ModPoly {
        hensel::sub(a, b, &self.modulus)
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> ModPoly {
        hensel::rem_monic(&hensel::mul(a, b, &self.modulus), &self.gpoly, &self.modulus)
    }

    pub fn pow(&self, a: &[BigInt], e: u32) -> ModPoly {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Image of a P-integral element.
    pub fn to_local(&self, a: &NFElement) -> Result<ModPoly, IdealError> {
        let p = self.prime.p();
        let (num, den) = split_denominator(a);
        let s = valuation_int(&den, p);
        let ps = BigInt::from(p).pow(s);
        let dprime = &den / &ps;
        let big_k = self.prec + s;
        let big_m = BigInt::from(p).pow(big_k);
        let g = if s == 0 { self.gpoly.clone() } else { lift_block(&self.prime, big_k) };
        let inv = dprime.extended_gcd(&big_m).x.mod_floor(&big_m);
        let scaled: Vec<BigInt> = num.iter().map(|c| c * &inv).collect();
        let r = hensel::rem_monic(&hensel::reduce(&scaled, &big_m), &g, &big_m);
        if r.iter().any(|c| !(c % &ps).is_zero()) {
            return Err(IdealError::NotIntegral(self.prime.label()));
        }
        Ok(hensel::reduce(&r.iter().map(|c| c / &ps).collect::<Vec<_>>(), &self.modulus))
    }

    /// Reduction into the residue field `F_p[x]/(g)`.
    pub fn residue(&self, a: &[BigInt]) -> PrimeFieldPoly {
        hensel::to_fp(a, self.prime.p()).rem(self.prime.residue_poly())
    }

    /// Quadratic character of a unit's residue: +1, -1, or 0 if in P. Odd p only.
    pub fn quadratic_character(&self, a: &[BigInt]) -> i8 {
        let r = self.residue(a);
        residue_power_symbol(&r, &self.prime)
    }

    /// `a / p` for `a ∈ pO_P`; the top p-adic digit becomes unknown.
    fn div_p(&self, a: &[BigInt]) -> ModPoly {
        let p = BigInt::from(self.prime.p());
        a.iter()
            .map(|c| {
                debug_assert!((c % &p).is_zero());
                c / &p
            })
            .collect()
    }

    /// `a / π` for `a ∈ P`.
    pub fn div_pi(&self, a: &[BigInt]) -> ModPoly {
        self.div_p(&self.mul(a, &self.p_over_pi))
    }

    /// Lift of a residue-field element to the ring.
    pub fn lift_residue(&self, r: &PrimeFieldPoly) -> ModPoly {
        hensel::from_fp(r)
    }

    /// Canonical key of `a mod P^n`: its first `n` π-adic digits, each a
    /// residue coefficient vector of length f. Needs `n <= precision`.
    pub fn key(&self, a: &[BigInt], n: u32) -> Vec<u64> {
        debug_assert!(n <= self.prec);
        let f = self.prime.f() as usize;
        let mut out = Vec::with_capacity(n as usize * f);
        let mut x = a.to_vec();
        for i in 0..n {
            let r = self.residue(&x);
            out.extend((0..f).map(|j| r.coeff(j)));
            if i + 1 < n {
                let d = self.sub(&x, &self.lift_residue(&r));
                x = self.div_pi(&d);
            }
        }
        out
    }

    /// All residue-field elements, as lifts, in a fixed order.
    pub fn residue_representatives(&self) -> Vec<ModPoly> {
        let p = self.prime.p();
        let f = self.prime.f();
        let q = p.pow(f);
        (0..q)
            .map(|mut idx| {
                let coeffs: Vec<u64> = (0..f)
                    .map(|_| {
                        let c = idx % p;
                        idx /= p;
                        c
                    })
                    .collect();
                hensel::from_fp(&PrimeFieldPoly::new(p, coeffs))
            })
            .collect()
    }

    /// Representatives `Σ_{i<n} r_i π^i` of `O_P / P^n`.
    pub fn representatives_mod_pn(&self, n: u32) -> Vec<ModPoly> {
        let digits = self.residue_representatives();
        let mut out = vec![Vec::new()];
        let mut pi_pow = self.one();
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * digits.len());
            for base in &out {
                for d in &digits {
                    next.push(self.add(base, &self.mul(d, &pi_pow)));
                }
            }
            out = next;
            pi_pow = self.mul(&pi_pow, &self.pi);
        }
        out
    }

    /// `u` with `a = π^v u`, `u` a unit, for integral nonzero `a` of valuation `v`.
    pub fn unit_part(&self, a: &NFElement) -> Result<(ModPoly, i64), IdealError> {
        let v = valuation(a, &self.prime)?;
        if v < 0 {
            return Err(IdealError::NotIntegral(self.prime.label()));
        }
        if v == 0 {
            return Ok((self.to_local(a)?, 0));
        }
        let vu = v as u32;
        let big = LocalRing::new(&self.prime, self.prec + vu);
        let x = big.to_local(a)?;
        let y = big.mul(&x, &big.pow(&big.p_over_pi, vu));
        let pv = BigInt::from(self.prime.p()).pow(vu);
        let u: Vec<BigInt> = y
            .iter()
            .map(|c| {
                debug_assert!((c % &pv).is_zero());
                c / &pv
            })
            .collect();
        Ok((hensel::reduce(&u, &self.modulus), v))
    }
}

fn residue_power_symbol(r: &PrimeFieldPoly, prime: &PrimeIdeal) -> i8 {
    if r.is_zero() {
        return 0;
    }
    let q: BigUint = BigUint::from(prime.p()).pow(prime.f());
    let e = (q - 1u32) / 2u32;
    let s = r.pow_mod(&e, prime.residue_poly());
    if s.is_one() {
        1
    } else {
        debug_assert_eq!(s.deg(), 0);
        debug_assert_eq!(s.coeff(0).to_u64(), Some(prime.p() - 1));
        -1
    }
}

/// Quadratic residue symbol of `a` at an odd prime: 1, -1, or 0 when `a ∈ P`.
pub fn residue_symbol(a: &NFElement, prime: &PrimeIdeal) -> Result<i8, IdealError> {
    if prime.is_dyadic() {
        return Err(IdealError::DyadicPrime);
    }
    if a.is_zero() {
        return Ok(0);
    }
    match valuation(a, prime)? {
        v if v > 0 => Ok(0),
        v if v < 0 => Err(IdealError::NotIntegral(prime.label())),
        _ => {
            let ring = LocalRing::new(prime, 1);
            Ok(ring.quadratic_character(&ring.to_local(a)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::ideals::prime::split_prime;
    use crate::numfield::NumberField;

    #[test]
    fn valuation_examples() {
        let k = NumberField::from_i64(&[1, 0, 1]).unwrap();
        for p in [2u64, 3, 5] {
            for pr in split_prime(&k, p).unwrap() {
                assert_eq!(valuation(&k.one(), &pr), Ok(0));
            }
        }
        let five = split_prime(&k, 5).unwrap();
        assert_eq!(valuation(&k.elem(&[5]), &five[0]), Ok(1));
        let two = split_prime(&k, 2).unwrap();
        assert_eq!(valuation(&k.elem(&[2]), &two[0]), Ok(2));
        assert_eq!(valuation(&k.elem(&[1, 1]), &two[0]), Ok(1));
        // 2 + i has norm 5 and lies in exactly one of the primes above 5
        let a = k.elem(&[2, 1]);
        let vs: Vec<i64> = five.iter().map(|p| valuation(&a, p).unwrap()).collect();
        assert_eq!(vs.iter().sum::<i64>(), 1);
        assert_eq!(valuation(&a.scale(&rat(1, 25)), &five[0]), Ok(vs[0] - 2));
        assert_eq!(valuation(&k.zero(), &five[0]), Err(IdealError::ZeroElement));
    }

    #[test]
    fn residue_symbol_examples() {
        let q = NumberField::rationals();
        let seven = &split_prime(&q, 7).unwrap()[0];
        assert_eq!(residue_symbol(&q.elem(&[2]), seven), Ok(1));
        assert_eq!(residue_symbol(&q.elem(&[3]), seven), Ok(-1));
        assert_eq!(residue_symbol(&q.elem(&[7]), seven), Ok(0));
        let two = &split_prime(&q, 2).unwrap()[0];
        assert_eq!(residue_symbol(&q.elem(&[3]), two), Err(IdealError::DyadicPrime));
        // 1/3 mod 7 = 5, a non-residue
        let third = NFElement::from_rational(&q, rat(1, 3));
        assert_eq!(residue_symbol(&third, seven), Ok(-1));
    }

    #[test]
    fn local_elements_with_p_in_denominator() {
        // in Q(i), (1 + 2i)/5 has valuation -1 at one prime above 5 and 0 at the other
        let k = NumberField::from_i64(&[1, 0, 1]).unwrap();
        let a = k.elem(&[1, 2]).scale(&rat(1, 5));
        for pr in split_prime(&k, 5).unwrap() {
            let v = valuation(&a, &pr).unwrap();
            let ring = LocalRing::new(&pr, 3);
            if v == 0 {
                let x = ring.to_local(&a).unwrap();
                assert_ne!(ring.quadratic_character(&x), 0);
            } else {
                assert_eq!(v, -1);
                assert!(ring.to_local(&a).is_err());
            }
        }
    }

    #[test]
    fn digits_and_unit_parts() {
        let k = NumberField::from_i64(&[-2, 0, 1]).unwrap();
        let two = &split_prime(&k, 2).unwrap()[0];
        let ring = LocalRing::new(two, 6);
        let reps = ring.representatives_mod_pn(4);
        assert_eq!(reps.len(), 16);
        let mut keys: Vec<_> = reps.iter().map(|r| ring.key(r, 4)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 16);
        // 6 = sqrt2^2 * 3: valuation 2, unit part 3
        let (u, v) = ring.unit_part(&k.elem(&[6])).unwrap();
        assert_eq!(v, 2);
        assert_eq!(ring.key(&u, 4), ring.key(&ring.from_int(3), 4));
        let q = NumberField::rationals();
        let p3 = &split_prime(&q, 3).unwrap()[0];
        let r3 = LocalRing::new(p3, 3);
        let (u, v) = r3.unit_part(&NFElement::from_rational(&q, int(18))).unwrap();
        assert_eq!((r3.key(&u, 2), v), (r3.key(&r3.from_int(2), 2), 2));
    }
}
