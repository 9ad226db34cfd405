//! Integer polynomials modulo prime powers and multifactor Hensel lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::fp::PrimeFieldPoly;

/// Polynomial over Z/m, ascending, coefficients in `[0, m)`.
pub type ModPoly = Vec<BigInt>;

pub fn trim(mut v: ModPoly) -> ModPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn reduce(v: &[BigInt], m: &BigInt) -> ModPoly {
    trim(v.iter().map(|c| c.mod_floor(m)).collect())
}

pub fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ModPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

pub fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ModPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

pub fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Remainder modulo a monic polynomial over Z/m.
pub fn rem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> ModPoly {
    debug_assert!(d.last().is_some_and(One::is_one));
    let dd = d.len() - 1;
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > dd {
        let c = r.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let off = r.len() - dd;
        for (j, dc) in d[..dd].iter().enumerate() {
            r[off + j] -= &c * dc;
        }
    }
    reduce(&r, m)
}

pub fn to_fp(a: &[BigInt], p: u64) -> PrimeFieldPoly {
    let pb = BigInt::from(p);
    PrimeFieldPoly::new(
        p,
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect(),
    )
}

pub fn from_fp(a: &PrimeFieldPoly) -> ModPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn product_fp(fs: &[PrimeFieldPoly], p: u64) -> PrimeFieldPoly {
    fs.iter().fold(PrimeFieldPoly::one(p), |acc, g| acc.mul(g))
}

/// Lift `f ≡ g0 * h0 (mod p)` to `f ≡ g * h (mod p^k)`; `f`, `g0`, `h0` monic,
/// `g0`, `h0` coprime.
fn lift_pair(
    f: &[BigInt],
    g0: &PrimeFieldPoly,
    h0: &PrimeFieldPoly,
    p: u64,
    k: u32,
) -> (ModPoly, ModPoly) {
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    let (one, s, t) = g0.xgcd(h0);
    debug_assert!(one.is_one(), "Hensel factors must be coprime mod p");
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let e = sub(f, &mul(&g, &h, &modulus), &modulus);
        if e.is_empty() {
            break;
        }
        let c: ModPoly = e
            .iter()
            .map(|x| {
                debug_assert!((x % &pj).is_zero());
                x / &pj
            })
            .collect();
        let c = to_fp(&c, p);
        let (q, dg) = t.mul(&c).div_rem(g0);
        let dh = s.mul(&c).add(&q.mul(h0));
        let scale = |d: &PrimeFieldPoly| -> ModPoly {
            d.coeffs().iter().map(|&x| BigInt::from(x) * &pj).collect()
        };
        g = add(&g, &scale(&dg), &modulus);
        h = add(&h, &scale(&dh), &modulus);
        pj *= &pb;
    }
    (g, h)
}

/// Lift a factorization of a monic `f` into pairwise coprime monic factors
/// mod `p` to one mod `p^k`. Factor order is preserved.
pub fn hensel_lift(f: &[BigInt], factors: &[PrimeFieldPoly], p: u64, k: u32) -> Vec<ModPoly> {
    let modulus = BigInt::from(p).pow(k);
    let f = reduce(f, &modulus);
    match factors.len() {
        0 => Vec::new(),
        1 => vec![f],
        n => {
            let (left, right) = factors.split_at(n / 2);
            let (g, h) = lift_pair(&f, &product_fp(left, p), &product_fp(right, p), p, k);
            let mut out = hensel_lift(&g, left, p, k);
            out.extend(hensel_lift(&h, right, p, k));
            out
        }
    }
}

/// Symmetric representative in `(-m/2, m/2]`.
pub fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}
