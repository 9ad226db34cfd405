//! Field automorphisms, verified by exact linear algebra.

use crate::arith::{EchelonBasis, RationalMatrix};

use super::element::NFElement;
use super::field::NumberField;
use super::subfield::FieldEmbedding;
use super::NumfieldError;

/// Q-linear ring automorphism of a number field, stored as its matrix in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldAutomorphism {
    field: NumberField,
    image: NFElement,
    matrix: RationalMatrix,
}

impl FieldAutomorphism {
    pub fn identity(field: &NumberField) -> Self {
        Self::from_generator_image(field, field.generator()).expect("identity")
    }

    /// Automorphism sending the power-basis generator to `image`.
    pub fn from_generator_image(field: &NumberField, image: NFElement) -> Result<Self, NumfieldError> {
        let emb = FieldEmbedding::new(field, field, image.clone())?;
        let cols: Vec<_> = (0..field.degree())
            .map(|i| {
                let mut e = vec![num_traits::Zero::zero(); field.degree()];
                e[i] = num_traits::One::one();
                emb.apply(&NFElement::new(field, e)).coords().to_vec()
            })
            .collect();
        Ok(Self { field: field.clone(), image, matrix: RationalMatrix::from_columns(&cols) })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn image_of_generator(&self) -> &NFElement {
        &self.image
    }

    pub fn apply(&self, a: &NFElement) -> NFElement {
        assert!(a.field().same(&self.field));
        NFElement::new(&self.field, self.matrix.mul_vec(a.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_generator_image(&self.field, self.apply(&other.image)).expect("composite automorphism")
    }

    pub fn is_identity(&self) -> bool {
        self.image == self.field.generator()
    }
}

/// Extend `images` (pairs generator ↦ image) to an automorphism of `e` that
/// fixes the image of `fixed` pointwise.
pub fn verify_automorphism(
    e: &NumberField,
    fixed: &FieldEmbedding,
    images: &[(NFElement, NFElement)],
) -> Result<FieldAutomorphism, NumfieldError> {
    let n = e.degree();
    let mut span = EchelonBasis::new(n);
    let mut basis: Vec<(NFElement, NFElement)> = vec![(e.one(), e.one())];
    span.insert(e.one().coords());
    let mut i = 0;
    while i < basis.len() {
        for (g, img) in images {
            let prod = &basis[i].0 * g;
            if span.insert(prod.coords()) {
                let pimg = &basis[i].1 * img;
                basis.push((prod, pimg));
            }
        }
        i += 1;
    }
    if basis.len() < n {
        return Err(NumfieldError::NotGenerating);
    }
    // sigma = Img * B^{-1}
    let b = RationalMatrix::from_columns(&basis.iter().map(|(x, _)| x.coords().to_vec()).collect::<Vec<_>>());
    let img = RationalMatrix::from_columns(&basis.iter().map(|(_, y)| y.coords().to_vec()).collect::<Vec<_>>());
    let sigma_cols: Vec<_> = (0..n)
        .map(|j| {
            let mut ej = vec![num_traits::Zero::zero(); n];
            ej[j] = num_traits::One::one();
            let c = b.solve(&ej).expect("basis is invertible");
            img.mul_vec(&c)
        })
        .collect();
    let matrix = RationalMatrix::from_columns(&sigma_cols);
    let apply = |a: &NFElement| NFElement::new(e, matrix.mul_vec(a.coords()));
    for (x, sx) in &basis {
        for (g, img) in images {
            if apply(&(x * g)) != sx * img {
                return Err(NumfieldError::NotRingHomomorphism);
            }
        }
    }
    let fixed_gen = fixed.image_of_generator();
    if apply(fixed_gen) != *fixed_gen {
        return Err(NumfieldError::DoesNotFixSubfield);
    }
    let image = apply(&e.generator());
    Ok(FieldAutomorphism { field: e.clone(), image, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn worked_examples() {
        let e = NumberField::from_i64(&[-2, 0, 1]).unwrap();
        let q = NumberField::rationals();
        let fixed = FieldEmbedding::from_rationals(&q, &e);
        let x = e.generator();
        let conj = verify_automorphism(&e, &fixed, &[(x.clone(), -&x)]).unwrap();
        assert_eq!(conj.apply(&e.elem(&[1, 3])), e.elem(&[1, -3]));
        assert!(conj.compose(&conj).is_identity());
        let id = verify_automorphism(&e, &fixed, &[(x.clone(), x.clone())]).unwrap();
        assert!(id.is_identity());
        assert_eq!(
            verify_automorphism(&e, &fixed, &[(x.clone(), e.elem(&[1, 1]))]),
            Err(NumfieldError::NotRingHomomorphism)
        );
    }

    #[test]
    fn must_fix_subfield() {
        // E = Q(2^{1/4}), F = Q(sqrt2); x -> -x fixes x^2, x -> ix is not real
        let e = NumberField::from_i64(&[-2, 0, 0, 0, 1]).unwrap();
        let f = NumberField::from_i64(&[-2, 0, 1]).unwrap();
        let x = e.generator();
        let emb = FieldEmbedding::new(&f, &e, x.square()).unwrap();
        let s = verify_automorphism(&e, &emb, &[(x.clone(), -&x)]).unwrap();
        assert_eq!(s.apply(&x.square()), x.square());

        let b = NumberField::from_i64(&[1, 0, -10, 0, 1]).unwrap();
        let y = b.generator();
        let y3 = y.pow(3);
        let s2 = (&y3 - &y.scale(&int(9))).scale(&crate::arith::rational::rat(1, 2));
        let emb = FieldEmbedding::new(&f, &b, s2.clone()).unwrap();
        // y -> -y sends sqrt2 -> -sqrt2
        assert_eq!(
            verify_automorphism(&b, &emb, &[(y.clone(), -&y)]),
            Err(NumfieldError::DoesNotFixSubfield)
        );
    }

    #[test]
    fn not_generating() {
        let e = NumberField::from_i64(&[-2, 0, 0, 0, 1]).unwrap();
        let fixed = FieldEmbedding::from_rationals(&NumberField::rationals(), &e);
        let x2 = e.generator().square();
        assert_eq!(
            verify_automorphism(&e, &fixed, &[(x2.clone(), -&x2)]),
            Err(NumfieldError::NotGenerating)
        );
    }
}
