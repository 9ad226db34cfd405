//! Factorization over Q: squarefree decomposition, factorization modulo a
//! good prime, Hensel lifting, and exhaustive factor recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{factor_poly_mod_p_seeded, PrimeFieldPoly, DEFAULT_SEED};
use super::hensel::{hensel_lift, mul, symmetric, to_fp};
use super::poly::RationalPoly;
use super::rational::{is_prime_u64, Rational};
use super::ArithError;

/// Result of [`factor_rational_poly`]: `f = content * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(RationalPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> RationalPoly {
        self.factors.iter().fold(
            RationalPoly::constant(self.content.clone()),
            |acc, (g, e)| &acc * &g.pow(*e),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor a nonzero polynomial into monic irreducibles over Q.
pub fn factor_rational_poly(f: &RationalPoly) -> Result<Factorization, ArithError> {
    factor_rational_poly_seeded(f, DEFAULT_SEED)
}

pub fn factor_rational_poly_seeded(f: &RationalPoly, seed: u64) -> Result<Factorization, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let content = f.lc();
    let mut factors = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let (_, prim) = part.primitive_part();
        for g in factor_squarefree_integer(&prim, seed) {
            factors.push((RationalPoly::from_ints(&g).monic(), mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { content, factors })
}

/// Smallest odd prime not dividing the leading coefficient or the discriminant.
fn good_prime(f: &[BigInt]) -> u64 {
    let lc = f.last().expect("nonzero");
    let mut p = 3u64;
    loop {
        if is_prime_u64(p) && !(lc % BigInt::from(p)).is_zero() {
            let fp = to_fp(f, p);
            if fp.gcd(&fp.derivative()).is_one() {
                return p;
            }
        }
        p += 2;
    }
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + BigInt::one();
    (root << f.len()) * f.last().expect("nonzero").abs()
}

/// Zassenhaus factorization of a primitive squarefree integer polynomial.
fn factor_squarefree_integer(f: &[BigInt], seed: u64) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let p = good_prime(f);
    let pb = BigInt::from(p);
    let lc = f[n].clone();
    let fp = to_fp(f, p);
    let modular: Vec<PrimeFieldPoly> = factor_poly_mod_p_seeded(&fp, seed)
        .expect("nonzero mod good prime")
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = mignotte_bound(f) * 2;
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lc_inv = lc
        .extended_gcd(&modulus)
        .x
        .mod_floor(&modulus);
    let monic: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let mut lifted = hensel_lift(&monic, &modular, p, k);

    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let rest_lc = rest.last().expect("nonzero").clone();
            let mut cand = vec![rest_lc.mod_floor(&modulus)];
            for &i in &subset {
                cand = mul(&cand, &lifted[i], &modulus);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symmetric(c, &modulus)).collect();
            let cand = primitive(&cand);
            if let Some(q) = exact_quotient(&rest, &cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_subset(&mut subset, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    out.push(primitive(&rest));
    out
}

fn primitive(f: &[BigInt]) -> Vec<BigInt> {
    let mut g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if f.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

/// `a / b` over Z when `b` divides `a`.
fn exact_quotient(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    // constant-term test first
    let (a0, b0) = (&a[0], &b[0]);
    if !b0.is_zero() && !(a0 % b0).is_zero() {
        return None;
    }
    let (q, r) = RationalPoly::from_ints(a).div_rem(&RationalPoly::from_ints(b));
    if !r.is_zero() || !q.is_integral() {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Roots of `f` in Q, ascending, without multiplicity.
pub fn rational_roots(f: &RationalPoly) -> Result<Vec<Rational>, ArithError> {
    let fac = factor_rational_poly(f)?;
    let mut roots: Vec<Rational> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect();
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64(c)
    }

    #[test]
    fn worked_examples() {
        let f = factor_rational_poly(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.content, int(1));
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = factor_rational_poly(&p(&[-2, 0, 2])).unwrap();
        assert_eq!(f.content, int(2));
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = factor_rational_poly(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(f.is_irreducible());
        assert!(matches!(factor_rational_poly(&RationalPoly::zero()), Err(ArithError::ZeroPolynomial)));
    }

    #[test]
    fn swinnerton_dyer_needs_recombination() {
        // min poly of √2+√3+√5: irreducible over Q but splits into linears or quadratics mod p
        let f = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert!(factor_rational_poly(&f).unwrap().is_irreducible());
    }

    #[test]
    fn rational_coefficients_and_multiplicity() {
        let f = (&RationalPoly::new(vec![rat(1, 2), int(1)]).pow(2) * &p(&[-2, 0, 1])).scale(&rat(-3, 5));
        let fac = factor_rational_poly(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.content, rat(-3, 5));
        assert_eq!(fac.factors[0], (RationalPoly::new(vec![rat(1, 2), int(1)]), 2));
    }

    #[test]
    fn roots() {
        let f = &p(&[-1, 2]) * &p(&[3, 0, 1]);
        assert_eq!(rational_roots(&f).unwrap(), vec![rat(1, 2)]);
    }
}
