use crate::arith::gf2::{gf2_dot, gf2_kernel, gf2_rank, gf2_reduce, gf2_rref, gf2_solve};
use crate::ideals::{residue_symbol, valuation};
use crate::numfield::nfpoly::sqrt_in_field;
use crate::numfield::NFElement;

use super::inner::InnerTwists;
use super::packet::NewformPacket;
use super::TwistError;

/// Square classes `t_1..t_m` in K cutting out the twist characters.
#[derive(Clone, Debug)]
pub struct TwistDiscriminants {
    pub discriminants: Vec<NFElement>,
    /// `exponents[j][i]`: whether basis element `i` enters `t_j`.
    pub exponents: Vec<Vec<bool>>,
    /// `dual_basis[j]` indexes Γ: the twist whose character is that of `t_j`.
    pub dual_basis: Vec<usize>,
    /// Table indices used to pin down the square classes.
    pub usable_primes: Vec<usize>,
}

impl TwistDiscriminants {
    pub fn m(&self) -> usize {
        self.discriminants.len()
    }
}

fn subset_product(basis: &[NFElement], c: &[bool], one: NFElement) -> NFElement {
    basis.iter().zip(c).filter(|(_, &on)| on).fold(one, |acc, (b, _)| &acc * b)
}

fn is_odd_with_units(packet: &NewformPacket, i: usize, elems: &[NFElement]) -> Result<bool, TwistError> {
    let t = &packet.table()[i];
    if t.prime.is_dyadic() || t.ap.is_zero() {
        return Ok(false);
    }
    for x in elems {
        if valuation(x, &t.prime)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn recover_twist_discriminants(packet: &NewformPacket, tw: &InnerTwists) -> Result<TwistDiscriminants, TwistError> {
    let basis = packet.twist_search_basis();
    let k = packet.base_field();
    let r = basis.len();
    if tw.order() == 1 {
        return Ok(TwistDiscriminants { discriminants: vec![], exponents: vec![], dual_basis: vec![], usable_primes: vec![] });
    }
    let mut usable = Vec::new();
    let mut rows = Vec::new();
    for i in 0..packet.table().len() {
        if !is_odd_with_units(packet, i, basis)? {
            continue;
        }
        let prime = &packet.table()[i].prime;
        let row = basis
            .iter()
            .map(|b| residue_symbol(b, prime).map(|s| s == -1))
            .collect::<Result<Vec<bool>, _>>()?;
        usable.push(i);
        rows.push(row);
    }
    let mut solutions = vec![vec![false; r]];
    for s in 1..tw.order() {
        let target: Vec<bool> = usable.iter().map(|&i| tw.chars[s][i] == -1).collect();
        let c = gf2_solve(&rows, &target, r)
            .ok_or_else(|| TwistError::DiscriminantNotFound(format!("twist {s} of Γ")))?;
        solutions.push(c);
    }
    // kernel elements that are squares in K do not change the square class
    let kernel = gf2_kernel(&rows, r);
    for kv in &kernel {
        if sqrt_in_field(&subset_product(basis, kv, k.one()))?.is_none() {
            let c = &solutions[1];
            let shifted: Vec<bool> = c.iter().zip(kv).map(|(a, b)| a ^ b).collect();
            return Err(TwistError::AmbiguousDiscriminant {
                first: subset_product(basis, c, k.one()).display_in("a"),
                second: subset_product(basis, &shifted, k.one()).display_in("a"),
            });
        }
    }
    let kernel_rref = gf2_rref(&kernel, r);
    let solutions: Vec<Vec<bool>> = solutions.iter().map(|c| gf2_reduce(c, &kernel_rref)).collect();
    let exponents = gf2_rref(&solutions, r);
    if 1usize << exponents.len() != tw.order() {
        return Err(TwistError::DiscriminantNotFound(
            "a nontrivial twist has trivial character on every usable table prime".into(),
        ));
    }
    let dual_basis: Vec<usize> = exponents
        .iter()
        .map(|c| solutions.iter().position(|s| s == c).expect("RREF rows lie in the image"))
        .collect();
    let discriminants: Vec<NFElement> = exponents.iter().map(|c| subset_product(basis, c, k.one())).collect();
    let out = TwistDiscriminants { discriminants, exponents, dual_basis, usable_primes: usable };
    check_independent(&out)?;
    Ok(out)
}

/// No nonempty subset product of the `t_j` is a square.
fn check_independent(d: &TwistDiscriminants) -> Result<(), TwistError> {
    let m = d.m();
    if m > 6 {
        return Ok(());
    }
    for mask in 1usize..(1 << m) {
        let one = d.discriminants[0].field().one();
        let x = (0..m).filter(|j| mask >> j & 1 == 1).fold(one, |acc, j| &acc * &d.discriminants[j]);
        if sqrt_in_field(&x)?.is_some() {
            return Err(TwistError::InvariantViolation("recovered discriminants are dependent mod squares".into()));
        }
    }
    Ok(())
}

fn sign_vector(i: usize, m: usize) -> String {
    (0..m).map(|j| if j == i { '-' } else { '+' }).collect()
}

/// For each `i`, every table index realizing `σ_i`: `a_p ≠ 0`, p odd, all
/// `t_j` units, and `(t_j / p) = (-1)^{δ_ij}`.
pub fn frobenius_candidates(packet: &NewformPacket, d: &TwistDiscriminants) -> Result<Vec<Vec<usize>>, TwistError> {
    let m = d.m();
    let mut out = vec![Vec::new(); m];
    for idx in 0..packet.table().len() {
        if !is_odd_with_units(packet, idx, &d.discriminants)? {
            continue;
        }
        let prime = &packet.table()[idx].prime;
        let signs = d
            .discriminants
            .iter()
            .map(|t| residue_symbol(t, prime))
            .collect::<Result<Vec<i8>, _>>()?;
        for (i, slot) in out.iter_mut().enumerate() {
            if signs.iter().enumerate().all(|(j, &s)| s == if i == j { -1 } else { 1 }) {
                slot.push(idx);
            }
        }
    }
    Ok(out)
}

/// Least table prime (in label order) for each `σ_i`.
pub fn find_frobenius_primes(packet: &NewformPacket, d: &TwistDiscriminants) -> Result<Vec<usize>, TwistError> {
    let m = d.m();
    frobenius_candidates(packet, d)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.first().copied().ok_or_else(|| TwistError::FrobeniusNotFound(sign_vector(i, m))))
        .collect()
}

/// Character of `t_j` agrees with `χ` of its dual twist on all usable primes.
pub fn check_duality(packet: &NewformPacket, tw: &InnerTwists, d: &TwistDiscriminants) -> Result<(), TwistError> {
    let basis = packet.twist_search_basis();
    for (j, &s) in d.dual_basis.iter().enumerate() {
        for &i in &d.usable_primes {
            let prime = &packet.table()[i].prime;
            let row: Vec<bool> = basis
                .iter()
                .map(|b| residue_symbol(b, prime).map(|x| x == -1))
                .collect::<Result<_, _>>()?;
            if gf2_dot(&row, &d.exponents[j]) != (tw.chars[s][i] == -1) {
                return Err(TwistError::InvariantViolation(format!("character of t_{} disagrees at {prime}", j + 1)));
            }
        }
    }
    if gf2_rank(&d.exponents, basis.len()) != d.m() {
        return Err(TwistError::InvariantViolation("discriminant exponents are dependent".into()));
    }
    Ok(())
}
