//! Hilbert symbols as classes in Br(F)[2] and the endomorphism-class pipeline.

pub mod global;
pub mod local;
pub mod pipeline;
pub mod place;

use thiserror::Error;

use crate::ideals::IdealError;
use crate::numfield::NumfieldError;

pub use global::{candidate_places, corestrict_symbol, corestrict_symbol_witnessed, hilbert_symbol_global, hilbert_symbol_witnessed};
pub use local::{
    conic_solvable_oracle, hensel_threshold, local_invariant, local_invariant_witnessed, LocalWitness, Method, SymbolOptions,
};
pub use pipeline::{
    analyze_twists, compute_endomorphism_class, compute_endomorphism_class_with, EndomorphismReport, PipelineError,
    PipelineFailure, PipelineOptions, Stage, SymbolRecord, TwistAnalysis,
};
pub use place::{class_product, BrauerClass, Invariant, Place};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("Hilbert symbol entry is zero")]
    ZeroEntry,
    #[error("ramified places {support:?} violate reciprocity")]
    ReciprocityViolation { support: Vec<String> },
    #[error("classes or elements live over different fields")]
    FieldMismatch,
    #[error("precision {given} is below the Hensel threshold {required}")]
    PrecisionBelowThreshold { required: u32, given: u32 },
    #[error("no place {0}")]
    NoSuchPlace(String),
    #[error("prime {0} exceeds the supported range")]
    PrimeOutOfRange(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Numfield(#[from] NumfieldError),
}
