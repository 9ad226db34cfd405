//! `[X] = Σ_i cor_{FK/F}(t_i, a_{p_i}²)` from a newform packet.

use std::fmt;

use thiserror::Error;

use crate::numfield::{build_compositum_with_factor, FieldEmbedding, NFElement, NumberField, NumfieldError, Tower};
use crate::twists::discriminants::check_duality;
use crate::twists::{
    compute_center_field, detect_inner_twists, find_frobenius_primes, frobenius_candidates, recover_twist_discriminants,
    InnerTwists, NewformPacket, TwistDiscriminants, TwistError, TwistOptions,
};

use super::global::corestrict_symbol_witnessed;
use super::local::{LocalWitness, SymbolOptions};
use super::place::{class_product, BrauerClass};
use super::BrauerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    CenterField,
    InnerTwists,
    Discriminants,
    FrobeniusPrimes,
    Compositum,
    Symbols,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::CenterField => "compute_center_field",
            Stage::InnerTwists => "detect_inner_twists",
            Stage::Discriminants => "recover_twist_discriminants",
            Stage::FrobeniusPrimes => "find_frobenius_primes",
            Stage::Compositum => "build_compositum",
            Stage::Symbols => "corestrict_symbol",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineFailure {
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error(transparent)]
    Numfield(#[from] NumfieldError),
    #[error("{0}")]
    InvalidChoice(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("stage {stage}: {failure}")]
pub struct PipelineError {
    pub stage: Stage,
    pub failure: PipelineFailure,
}

impl PipelineError {
    /// Self-check failures, as opposed to bad or insufficient input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self.failure,
            PipelineFailure::Twist(TwistError::InvariantViolation(_))
                | PipelineFailure::Brauer(BrauerError::ReciprocityViolation { .. })
        )
    }
}

fn at<E: Into<PipelineFailure>>(stage: Stage) -> impl Fn(E) -> PipelineError {
    move |e| PipelineError { stage, failure: e.into() }
}

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub twist: TwistOptions,
    pub symbol: SymbolOptions,
    /// Which factor of K's polynomial over F defines FK.
    pub compositum_factor: usize,
    /// Replace the least-label Frobenius primes by these labels.
    pub frobenius_override: Option<Vec<String>>,
    /// Multiply each `t_i` by the square of the given element of K.
    pub discriminant_scales: Option<Vec<NFElement>>,
}

/// Everything up to and including discriminant recovery.
#[derive(Clone, Debug)]
pub struct TwistAnalysis {
    pub center: NumberField,
    pub center_embedding: FieldEmbedding,
    pub twists: InnerTwists,
    pub discriminants: TwistDiscriminants,
}

pub fn analyze_twists(packet: &NewformPacket, opts: &TwistOptions) -> Result<TwistAnalysis, PipelineError> {
    let center = compute_center_field(packet, opts.max_prim_coeff).map_err(at(Stage::CenterField))?;
    let twists = detect_inner_twists(packet, &center, opts).map_err(at(Stage::InnerTwists))?;
    let discriminants = recover_twist_discriminants(packet, &twists).map_err(at(Stage::Discriminants))?;
    check_duality(packet, &twists, &discriminants).map_err(at(Stage::Discriminants))?;
    Ok(TwistAnalysis { center: center.0, center_embedding: center.1, twists, discriminants })
}

/// One factor `cor(t_i, a_{p_i}²)` of the product.
#[derive(Clone, Debug)]
pub struct SymbolRecord {
    pub t: NFElement,
    pub prime: String,
    /// `a_{p_i}²` as an element of F.
    pub ap_squared: NFElement,
    /// `N_{FK/F}(t_i)`.
    pub norm: NFElement,
    pub class: BrauerClass,
    pub witnesses: Vec<LocalWitness>,
}

#[derive(Clone, Debug)]
pub struct EndomorphismReport {
    pub analysis: TwistAnalysis,
    pub discriminants: Vec<NFElement>,
    pub frobenius_primes: Vec<String>,
    pub tower: Tower,
    pub symbols: Vec<SymbolRecord>,
    pub class: BrauerClass,
    pub warnings: Vec<String>,
}

impl EndomorphismReport {
    pub fn m(&self) -> usize {
        self.discriminants.len()
    }
}

pub fn compute_endomorphism_class(packet: &NewformPacket) -> Result<EndomorphismReport, PipelineError> {
    compute_endomorphism_class_with(packet, &PipelineOptions::default())
}

pub fn compute_endomorphism_class_with(
    packet: &NewformPacket,
    opts: &PipelineOptions,
) -> Result<EndomorphismReport, PipelineError> {
    let analysis = analyze_twists(packet, &opts.twist)?;
    let d = &analysis.discriminants;
    let m = d.m();
    let table = packet.table();

    let chosen: Vec<usize> = match &opts.frobenius_override {
        None => find_frobenius_primes(packet, d).map_err(at(Stage::FrobeniusPrimes))?,
        Some(labels) => {
            let invalid = |msg: String| at(Stage::FrobeniusPrimes)(PipelineFailure::InvalidChoice(msg));
            if labels.len() != m {
                return Err(invalid(format!("expected {m} Frobenius primes, got {}", labels.len())));
            }
            let cands = frobenius_candidates(packet, d).map_err(at(Stage::FrobeniusPrimes))?;
            labels
                .iter()
                .zip(&cands)
                .map(|(l, c)| {
                    c.iter()
                        .copied()
                        .find(|&i| table[i].prime.label() == *l)
                        .ok_or_else(|| invalid(format!("{l} does not realize the required sign vector")))
                })
                .collect::<Result<_, _>>()?
        }
    };

    let mut ts = d.discriminants.clone();
    if let Some(scales) = &opts.discriminant_scales {
        if scales.len() != m || scales.iter().any(|s| s.is_zero() || !s.field().same(packet.base_field())) {
            return Err(at(Stage::Discriminants)(PipelineFailure::InvalidChoice(
                "need one nonzero scale in K per discriminant".into(),
            )));
        }
        ts = ts.iter().zip(scales).map(|(t, s)| t * &s.square()).collect();
    }

    let tower = build_compositum_with_factor(&analysis.center, packet.base_field(), opts.compositum_factor)
        .map_err(at(Stage::Compositum))?;

    let mut class = BrauerClass::trivial(&analysis.center);
    let mut symbols = Vec::with_capacity(m);
    for (t, &idx) in ts.iter().zip(&chosen) {
        let sym = at::<BrauerError>(Stage::Symbols);
        let ap2 = analysis
            .center_embedding
            .preimage(&table[idx].ap.square())
            .ok_or_else(|| at(Stage::Symbols)(TwistError::InvariantViolation("a_p^2 is outside F".into())))?;
        let t_fk = tower.emb_k.apply(t);
        let (c, witnesses) = corestrict_symbol_witnessed(&t_fk, &ap2, &tower, &opts.symbol).map_err(&sym)?;
        let norm = crate::numfield::norm_compositum(&t_fk, &tower).map_err(at(Stage::Symbols))?;
        class = class_product(&class, &c).map_err(&sym)?;
        symbols.push(SymbolRecord {
            t: t.clone(),
            prime: table[idx].prime.label(),
            ap_squared: ap2,
            norm,
            class: c,
            witnesses,
        });
    }
    // reciprocity for the product, independently of each factor
    let class = BrauerClass::from_places(&analysis.center, class.ramified_places().cloned()).map_err(at(Stage::Symbols))?;
    Ok(EndomorphismReport {
        discriminants: ts,
        frobenius_primes: chosen.iter().map(|&i| table[i].prime.label()).collect(),
        analysis,
        tower,
        symbols,
        class,
        warnings: packet.warnings().to_vec(),
    })
}
