//! Inner twists from an eigenvalue table: center field, the twist group Γ,
//! twist discriminants, and Frobenius primes.

pub mod discriminants;
pub mod inner;
pub mod packet;

use thiserror::Error;

use crate::ideals::IdealError;
use crate::numfield::{NumfieldError, DEFAULT_MAX_PRIM_COEFF};

pub use discriminants::{find_frobenius_primes, frobenius_candidates, recover_twist_discriminants, TwistDiscriminants};
pub use inner::{compute_center_field, detect_inner_twists, InnerTwists};
pub use packet::{NewformPacket, PacketError, TableEntry};

pub const DEFAULT_MIN_PRIMES: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistOptions {
    /// Required number of table primes with `a_p ≠ 0`.
    pub min_primes: usize,
    pub max_prim_coeff: u32,
}

impl Default for TwistOptions {
    fn default() -> Self {
        Self { min_primes: DEFAULT_MIN_PRIMES, max_prim_coeff: DEFAULT_MAX_PRIM_COEFF }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("eigenvalue table is empty")]
    EmptyTable,
    #[error("only {found} table primes have a_p != 0; at least {required} are required")]
    TooFewPrimes { found: usize, required: usize },
    #[error("the eigenvalues and the center field do not generate the Hecke field")]
    TableDoesNotGenerateHeckeField,
    #[error("inconsistent twist: {0}")]
    InconsistentTwist(String),
    #[error("automorphism {0} of the Hecke field does not square to the identity")]
    NonTwoTorsionGroup(String),
    #[error("no element of the twist-search span matches the character of {0}")]
    DiscriminantNotFound(String),
    #[error("square classes {first} and {second} both match every usable table prime")]
    AmbiguousDiscriminant { first: String, second: String },
    #[error("no table prime realizes the sign vector {0}")]
    FrobeniusNotFound(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Numfield(#[from] NumfieldError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}
