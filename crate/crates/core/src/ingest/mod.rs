//! Packet and report documents, the eigenvalue-dump importer, synthetic
//! fixtures, and the expression syntax used on the command line.

pub mod cli;
pub mod document;
pub mod expr;
pub mod lmfdb;
pub mod report;
pub mod synth;

use thiserror::Error;

use crate::ideals::IdealError;
use crate::numfield::NumfieldError;
use crate::twists::PacketError;

pub use document::{parse_packet, serialize_packet, PacketDocument};
pub use lmfdb::{export_lmfdb_hmf, import_lmfdb_hmf};
pub use synth::{synth_packet, FixtureSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("schema error at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error("base field is not totally real")]
    FieldNotTotallyReal,
    #[error("base field has even degree {0}")]
    EvenDegreeBaseField(usize),
    #[error("bad prime label {label:?} at {pointer:?}: {reason}")]
    BadPrimeLabel { pointer: String, label: String, reason: String },
    #[error("line {line}, column {column}: {message}")]
    Grammar { line: usize, column: usize, message: String },
    #[error("entry {entry}: {detail}")]
    PrimeMatchFailed { entry: usize, detail: String },
    #[error("entry {entry}: expected {expected} coefficients, found {found}")]
    DegreeMismatch { entry: usize, expected: usize, found: usize },
    #[error("discriminant {0} is a square (or a product of planted discriminants is)")]
    SquareDiscriminant(String),
    #[error("fixture generation ran out of primes: {0}")]
    FixtureExhausted(String),
    #[error(transparent)]
    Packet(#[from] PacketError),
    #[error(transparent)]
    Numfield(#[from] NumfieldError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}
