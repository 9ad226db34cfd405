//! Number fields presented as Q[x]/(f).

pub mod automorphism;
pub mod compositum;
pub mod element;
pub mod field;
pub mod nfpoly;
pub mod sturm;
pub mod subfield;

use thiserror::Error;

use crate::arith::ArithError;

pub use automorphism::{verify_automorphism, FieldAutomorphism};
pub use compositum::{build_compositum, build_compositum_with_factor, norm_compositum, Tower};
pub use element::NFElement;
pub use field::NumberField;
pub use nfpoly::{factor_over_numberfield, NfFactor, NfPoly};
pub use subfield::{subfield_from_generators, FieldEmbedding, DEFAULT_MAX_PRIM_COEFF};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumfieldError {
    #[error("defining polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("defining polynomial {0} is reducible over Q")]
    Reducible(String),
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("generator images are not consistent with a ring homomorphism")]
    NotRingHomomorphism,
    #[error("the given elements do not generate the field")]
    NotGenerating,
    #[error("automorphism does not fix the subfield")]
    DoesNotFixSubfield,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("no primitive element with coefficients bounded by {0}")]
    PrimitiveElementSearchExhausted(u32),
    #[error("factor index {index} out of range ({count} factors)")]
    FactorIndex { index: usize, count: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
