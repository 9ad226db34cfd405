//! Brauer class of the endomorphism algebra attached to a non-CM Hilbert
//! newform of parallel weight 2 with trivial character, computed from a table
//! of Hecke eigenvalues as a product of corestricted Hilbert symbols.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: exact rationals, polynomials over Q and F_p, factorization, linear algebra.
//! * [`numfield`]: number fields, subfields, automorphisms, Trager factorization,
//!   composita, real embeddings.
//! * [`ideals`]: prime splitting, valuations, residue symbols, completions.
//! * [`twists`]: center field, inner twists, twist discriminants, Frobenius primes.
//! * [`brauer`]: local invariants, Hilbert symbols, corestriction, the full pipeline.
//! * [`ingest`]: packet/report JSON, eigenvalue-dump importer, fixtures, CLI.

pub mod arith;
pub mod brauer;
pub mod ideals;
pub mod ingest;
pub mod numfield;
pub mod twists;
