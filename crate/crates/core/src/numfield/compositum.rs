//! The compositum FK of two number fields and norms from it down to F.

use crate::arith::rational::int;

use super::element::NFElement;
use super::field::NumberField;
use super::nfpoly::{trager_factor, NfPoly};
use super::subfield::FieldEmbedding;
use super::NumfieldError;

/// `FK = F[x]/(g)` for a factor `g` of K's defining polynomial over F.
#[derive(Clone, Debug)]
pub struct Tower {
    pub f: NumberField,
    pub k: NumberField,
    pub fk: NumberField,
    pub emb_f: FieldEmbedding,
    pub emb_k: FieldEmbedding,
    /// The chosen factor, with coefficients in F.
    pub g: NfPoly,
    pub factor_index: usize,
    pub factor_count: usize,
}

impl Tower {
    /// `[FK : F]`
    pub fn relative_degree(&self) -> usize {
        self.g.deg()
    }
}

/// Compositum through the first factor of K's polynomial over F.
pub fn build_compositum(f: &NumberField, k: &NumberField) -> Result<Tower, NumfieldError> {
    build_compositum_with_factor(f, k, 0)
}

pub fn build_compositum_with_factor(f: &NumberField, k: &NumberField, index: usize) -> Result<Tower, NumfieldError> {
    let kpoly = NfPoly::from_rational_poly(f, k.poly());
    if f.is_rationals() || k.is_rationals() {
        let (fk, emb_f, emb_k, g) = if f.is_rationals() {
            // g(x) = K.poly over F = Q
            (k.clone(), FieldEmbedding::from_rationals(f, k), FieldEmbedding::identity(k), kpoly)
        } else {
            (f.clone(), FieldEmbedding::identity(f), FieldEmbedding::from_rationals(k, f), kpoly)
        };
        if index != 0 {
            return Err(NumfieldError::FactorIndex { index, count: 1 });
        }
        return Ok(Tower { f: f.clone(), k: k.clone(), fk, emb_f, emb_k, g, factor_index: 0, factor_count: 1 });
    }
    let (shift, factors) = trager_factor(k.poly(), f)?;
    let count = factors.len();
    let chosen = factors
        .into_iter()
        .nth(index)
        .ok_or(NumfieldError::FactorIndex { index, count })?;
    let fk = NumberField::new_unchecked(chosen.norm.clone());
    let z = fk.generator();
    // alpha is the unique common root of m(y) and K.poly(z - shift·y)
    let m = NfPoly::from_rational_poly(&fk, f.poly());
    let lin = NfPoly::new(&fk, vec![z.clone(), NFElement::from_rational(&fk, int(-shift))]);
    let h = NfPoly::from_rational_poly(&fk, k.poly()).compose(&lin);
    let common = m.gcd(&h);
    if common.deg() != 1 {
        return Err(NumfieldError::NotRingHomomorphism);
    }
    let alpha = -&common.coeff(0);
    let beta = &z - &alpha.scale(&int(shift));
    let emb_f = FieldEmbedding::new(f, &fk, alpha)?;
    let emb_k = FieldEmbedding::new(k, &fk, beta)?;
    Ok(Tower {
        f: f.clone(),
        k: k.clone(),
        fk,
        emb_f,
        emb_k,
        g: chosen.factor,
        factor_index: index,
        factor_count: count,
    })
}

/// `N_{FK/F}(t)` for `t ∈ K`, as `Res(g, T)` over F.
pub fn norm_compositum(t: &NFElement, tower: &Tower) -> Result<NFElement, NumfieldError> {
    if !t.field().same(&tower.k) {
        return Err(NumfieldError::FieldMismatch);
    }
    if t.is_zero() {
        return Err(NumfieldError::ZeroElement);
    }
    let tp = NfPoly::from_rational_poly(&tower.f, &t.to_poly());
    tower.g.resultant(&tp)
}
