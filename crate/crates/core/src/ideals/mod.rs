//! Prime ideals, valuations, and quadratic residue symbols.

pub mod local;
pub mod prime;

use thiserror::Error;

pub use local::{residue_symbol, valuation, LocalRing};
pub use prime::{parse_label, split_prime, split_prime_with_hints, PrimeIdeal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("defining polynomial must be monic with integer coefficients")]
    NonIntegralPolynomial,
    #[error("{p} may divide the index of Z[x]/(f) and no integral-basis hint whitelists it")]
    IndexDivisorUnsupported { p: u64 },
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("residue symbol is undefined at a prime above 2")]
    DyadicPrime,
    #[error("element is not integral at {0}")]
    NotIntegral(String),
    #[error("malformed prime label {0:?}")]
    BadLabel(String),
    #[error("no prime with label {0}")]
    UnknownLabel(String),
}
