use num_bigint::BigInt;
use thiserror::Error;

use crate::ideals::{prime::prime_by_label, IdealError, PrimeIdeal};
use crate::numfield::{NFElement, NumberField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PacketError {
    #[error("base field is not totally real")]
    FieldNotTotallyReal,
    #[error("base field has even degree {0}")]
    EvenDegreeBaseField(usize),
    #[error("bad prime label {label:?}: {reason}")]
    BadPrimeLabel { label: String, reason: String },
    #[error("table prime {0} divides the level norm")]
    PrimeDividesLevel(String),
    #[error("prime {0} appears twice in the table")]
    DuplicatePrime(String),
    #[error("level norm must be positive")]
    NonPositiveLevel,
    #[error("twist-search basis element {0} is zero")]
    ZeroTwistBasisElement(usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// One row of the eigenvalue table.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub prime: PrimeIdeal,
    pub ap: NFElement,
}

/// Validated newform data: base field K, Hecke field E, eigenvalues `a_p ∈ E`
/// at primes of K, and the twist-search basis in K.
#[derive(Clone, Debug)]
pub struct NewformPacket {
    base_field: NumberField,
    hecke_field: NumberField,
    level_norm: u64,
    table: Vec<TableEntry>,
    twist_search_basis: Vec<NFElement>,
    hints: Vec<u64>,
    seed: Option<u64>,
    warnings: Vec<String>,
}

impl NewformPacket {
    /// Validate and sort the table by `(p, index)`. Hecke-bound violations
    /// become warnings.
    pub fn new(
        base_field: NumberField,
        hecke_field: NumberField,
        level_norm: u64,
        entries: Vec<(String, NFElement)>,
        twist_search_basis: Vec<NFElement>,
        hints: Vec<u64>,
        seed: Option<u64>,
    ) -> Result<Self, PacketError> {
        if !base_field.is_totally_real() {
            return Err(PacketError::FieldNotTotallyReal);
        }
        if base_field.degree() % 2 == 0 {
            return Err(PacketError::EvenDegreeBaseField(base_field.degree()));
        }
        if level_norm == 0 {
            return Err(PacketError::NonPositiveLevel);
        }
        if let Some(i) = twist_search_basis.iter().position(NFElement::is_zero) {
            return Err(PacketError::ZeroTwistBasisElement(i));
        }
        let mut table = Vec::with_capacity(entries.len());
        let mut warnings = Vec::new();
        for (label, ap) in entries {
            let prime = prime_by_label(&base_field, &label, &hints).map_err(|e| match e {
                IdealError::BadLabel(_) | IdealError::UnknownLabel(_) | IdealError::NotPrime(_) => {
                    PacketError::BadPrimeLabel { label: label.clone(), reason: e.to_string() }
                }
                other => PacketError::Ideal(other),
            })?;
            if level_norm % prime.p() == 0 {
                return Err(PacketError::PrimeDividesLevel(label));
            }
            if let Some(w) = hecke_bound_violation(&prime, &ap) {
                warnings.push(w);
            }
            table.push(TableEntry { prime, ap });
        }
        table.sort_by(|a, b| a.prime.cmp(&b.prime));
        if let Some(w) = table.windows(2).find(|w| w[0].prime == w[1].prime) {
            return Err(PacketError::DuplicatePrime(w[0].prime.label()));
        }
        Ok(Self { base_field, hecke_field, level_norm, table, twist_search_basis, hints, seed, warnings })
    }

    pub fn base_field(&self) -> &NumberField {
        &self.base_field
    }

    pub fn hecke_field(&self) -> &NumberField {
        &self.hecke_field
    }

    pub fn level_norm(&self) -> u64 {
        self.level_norm
    }

    /// Sorted by `(p, index)`.
    pub fn table(&self) -> &[TableEntry] {
        &self.table
    }

    pub fn twist_search_basis(&self) -> &[NFElement] {
        &self.twist_search_basis
    }

    pub fn integral_basis_hints(&self) -> &[u64] {
        &self.hints
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn nonzero_count(&self) -> usize {
        self.table.iter().filter(|e| !e.ap.is_zero()).count()
    }
}

/// `|σ(a_p)| ≤ 2√Nm(p)` at every real embedding, i.e. `4Nm(p) - a_p² ≥ 0`.
fn hecke_bound_violation(prime: &PrimeIdeal, ap: &NFElement) -> Option<String> {
    let field = ap.field();
    let four_n = crate::arith::rational::from_bigint(BigInt::from(4) * prime.norm());
    let slack = &NFElement::from_rational(field, four_n) - &ap.square();
    if slack.is_zero() {
        return None;
    }
    let signs = slack.real_embedding_signs().ok()?;
    signs
        .iter()
        .position(|&s| s < 0)
        .map(|k| format!("a_p at {} exceeds the Hecke bound at real embedding {k}", prime.label()))
}
