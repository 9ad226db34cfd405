//! Subfields generated by elements, and embeddings between fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::rational::{common_denominator, from_bigint, int, squarefree_part};
use crate::arith::{EchelonBasis, Rational, RationalMatrix, RationalPoly};

use super::element::NFElement;
use super::field::NumberField;
use super::NumfieldError;

pub const DEFAULT_MAX_PRIM_COEFF: u32 = 5;

/// Injective homomorphism `source -> target` given by the image of the source generator.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: NumberField,
    target: NumberField,
    image: NFElement,
    matrix: RationalMatrix,
}

impl FieldEmbedding {
    pub fn new(source: &NumberField, target: &NumberField, image: NFElement) -> Result<Self, NumfieldError> {
        if !image.field().same(target) {
            return Err(NumfieldError::FieldMismatch);
        }
        if !image.eval_poly(source.poly()).is_zero() {
            return Err(NumfieldError::NotRingHomomorphism);
        }
        let mut cols = Vec::with_capacity(source.degree());
        let mut pw = target.one();
        for _ in 0..source.degree() {
            cols.push(pw.coords().to_vec());
            pw = &pw * &image;
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            image,
            matrix: RationalMatrix::from_columns(&cols),
        })
    }

    pub fn identity(field: &NumberField) -> Self {
        Self::new(field, field, field.generator()).expect("generator satisfies its polynomial")
    }

    /// The unique embedding of a degree-one field into `target`.
    pub fn from_rationals(source: &NumberField, target: &NumberField) -> Self {
        assert!(source.is_rationals());
        let root = -source.poly().coeff(0);
        Self::new(source, target, NFElement::from_rational(target, root)).expect("rational root")
    }

    pub fn source(&self) -> &NumberField {
        &self.source
    }

    pub fn target(&self) -> &NumberField {
        &self.target
    }

    pub fn image_of_generator(&self) -> &NFElement {
        &self.image
    }

    pub fn apply(&self, a: &NFElement) -> NFElement {
        assert!(a.field().same(&self.source), "element not in embedding source");
        NFElement::new(&self.target, self.matrix.mul_vec(a.coords()))
    }

    /// Element of the source mapping to `b`, if `b` lies in the image.
    pub fn preimage(&self, b: &NFElement) -> Option<NFElement> {
        assert!(b.field().same(&self.target), "element not in embedding target");
        self.matrix.solve(b.coords()).map(|c| NFElement::new(&self.source, c))
    }

    pub fn contains(&self, b: &NFElement) -> bool {
        self.preimage(b).is_some()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FieldEmbedding) -> FieldEmbedding {
        assert!(inner.target.same(&self.source));
        FieldEmbedding::new(&inner.source, &self.target, self.apply(&inner.image))
            .expect("composite of embeddings")
    }
}

/// Q-span of the algebra generated by `gens`.
fn algebra_span(field: &NumberField, gens: &[NFElement]) -> EchelonBasis {
    let mut basis = EchelonBasis::new(field.degree());
    let mut elems = vec![field.one()];
    basis.insert(field.one().coords());
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let c = &elems[i] * g;
            if basis.insert(c.coords()) {
                elems.push(c);
            }
        }
        i += 1;
    }
    basis
}

/// Coefficient vectors in `[-b, b]^r`, ordered by max-norm, then lexicographically.
fn combinations_by_height(r: usize, b: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=b).flat_map(move |h| {
        let side = (2 * h + 1) as u64;
        let total = side.pow(r as u32);
        (0..total).filter_map(move |mut idx| {
            let mut v = Vec::with_capacity(r);
            for _ in 0..r {
                v.push((idx % side) as i64 - h);
                idx /= side;
            }
            v.iter().any(|c| c.abs() == h).then_some(v)
        })
    })
}

/// Smallest subfield of `e` containing `gens`, with its embedding into `e`.
///
/// Quadratic subfields are presented as `x^2 - D` or `x^2 - x + (1-D)/4`
/// with `D` squarefree; other subfields by an integral monic minimal
/// polynomial of a small primitive element.
pub fn subfield_from_generators(
    e: &NumberField,
    gens: &[NFElement],
    max_coeff: u32,
) -> Result<(NumberField, FieldEmbedding), NumfieldError> {
    for g in gens {
        if !g.field().same(e) {
            return Err(NumfieldError::FieldMismatch);
        }
    }
    let dim = algebra_span(e, gens).len();
    if dim == 1 {
        let q = NumberField::rationals();
        let emb = FieldEmbedding::from_rationals(&q, e);
        return Ok((q, emb));
    }
    let mut chosen: Vec<NFElement> = Vec::new();
    let mut cur = 1;
    for g in gens {
        if cur == dim {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(g.clone());
        let d = algebra_span(e, &trial).len();
        if d > cur {
            chosen = trial;
            cur = d;
        }
    }
    let prim = chosen
        .iter()
        .find(|g| g.min_poly().deg() == dim)
        .cloned()
        .or_else(|| {
            combinations_by_height(chosen.len(), max_coeff as i64).find_map(|c| {
                let z = chosen
                    .iter()
                    .zip(&c)
                    .fold(e.zero(), |acc, (g, &ci)| &acc + &g.scale(&int(ci)));
                (z.min_poly().deg() == dim).then_some(z)
            })
        })
        .ok_or(NumfieldError::PrimitiveElementSearchExhausted(max_coeff))?;
    let (gen, poly) = normalize_generator(&prim);
    let f = NumberField::new_unchecked(poly);
    let emb = FieldEmbedding::new(&f, e, gen)?;
    Ok((f, emb))
}

/// Rescale a primitive element so its minimal polynomial is monic integral,
/// and put quadratic fields in canonical form.
fn normalize_generator(z: &NFElement) -> (NFElement, RationalPoly) {
    let m = z.min_poly();
    if m.deg() == 2 {
        // z = (-b ± s·sqrt(D0)) / 2 with D = b^2 - 4c = s^2·D0
        let (b, c) = (m.coeff(1), m.coeff(0));
        let disc = &b * &b - int(4) * &c;
        let num = disc.numer() * disc.denom();
        let d0 = squarefree_part(&num);
        let s2 = from_bigint(num / &d0) / from_bigint(disc.denom() * disc.denom());
        let s = sqrt_rational(&s2);
        let root_d0 = (&z.scale(&int(2)) + &NFElement::from_rational(z.field(), b)).scale(&s.recip());
        let d0m4 = d0.mod_floor(&BigInt::from(4));
        return if d0m4 == BigInt::one() {
            let w = (&root_d0 + &z.field().one()).scale(&Rational::new(1.into(), 2.into()));
            let c0 = from_bigint(BigInt::one() - &d0) / int(4);
            (w, RationalPoly::new(vec![c0, int(-1), int(1)]))
        } else {
            (root_d0, RationalPoly::new(vec![-from_bigint(d0), int(0), int(1)]))
        };
    }
    let den = common_denominator(m.coeffs());
    if den.is_one() {
        return (z.clone(), m);
    }
    let c = from_bigint(den);
    let n = m.deg();
    let coeffs = (0..=n)
        .map(|i| m.coeff(i) * num_traits::pow(c.clone(), n - i))
        .collect();
    (z.scale(&c), RationalPoly::new(coeffs))
}

fn sqrt_rational(q: &Rational) -> Rational {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    debug_assert!(&n * &n == *q.numer() && &d * &d == *q.denom() && !q.is_negative());
    Rational::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn worked_examples() {
        let e = NumberField::from_i64(&[-2, 0, 0, 0, 1]).unwrap();
        let x = e.generator();
        let (f, emb) = subfield_from_generators(&e, &[x.square()], 5).unwrap();
        assert_eq!(f.poly(), &RationalPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(emb.image_of_generator(), &x.square());

        let (f, _) = subfield_from_generators(&e, &[], 5).unwrap();
        assert!(f.is_rationals());

        let (f, emb) = subfield_from_generators(&e, &[x.clone()], 5).unwrap();
        assert_eq!(f.degree(), 4);
        assert!(emb.contains(&x));
    }

    #[test]
    fn quadratic_canonical_form() {
        let e = NumberField::from_i64(&[-5, 0, 1]).unwrap();
        let g = e.elem(&[3, 4]).scale(&rat(1, 7));
        let (f, emb) = subfield_from_generators(&e, &[g.clone()], 5).unwrap();
        assert_eq!(f.poly(), &RationalPoly::from_i64(&[-1, -1, 1]));
        assert!(emb.preimage(&g).is_some());
        let e = NumberField::from_i64(&[-12, 0, 1]).unwrap();
        let (f, _) = subfield_from_generators(&e, &[e.generator()], 5).unwrap();
        assert_eq!(f.poly(), &RationalPoly::from_i64(&[-3, 0, 1]));
    }

    #[test]
    fn biquadratic_needs_combination() {
        // E = Q(sqrt2, sqrt3) as Q[x]/(x^4 - 10x^2 + 1); sqrt2, sqrt3 generate E
        let e = NumberField::from_i64(&[1, 0, -10, 0, 1]).unwrap();
        let x = e.generator();
        let x3 = x.pow(3);
        let s2 = (&x3 - &x.scale(&int(9))).scale(&rat(1, 2));
        let s3 = (&x3 - &x.scale(&int(11))).scale(&rat(-1, 2));
        assert_eq!(s2.square(), e.elem(&[2]));
        assert_eq!(s3.square(), e.elem(&[3]));
        let (f, emb) = subfield_from_generators(&e, &[s2.clone(), s3.clone()], 5).unwrap();
        assert_eq!(f.degree(), 4);
        assert!(emb.contains(&s2) && emb.contains(&s3));
        assert!(f.poly().is_integral());
    }

    #[test]
    fn rescales_to_integral() {
        let e = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        let g = e.generator().scale(&rat(1, 3));
        let (f, emb) = subfield_from_generators(&e, &[g.clone()], 5).unwrap();
        assert!(f.poly().is_integral());
        assert!(emb.contains(&g));
    }
}
