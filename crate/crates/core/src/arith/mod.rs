//! Exact arithmetic substrate: rationals, polynomials over Q and F_p,
//! factorization, and linear algebra. No floating point anywhere.

pub mod factor;
pub mod fp;
pub mod gf2;
pub mod hensel;
pub mod matrix;
pub mod poly;
pub mod rational;

use thiserror::Error;

pub use factor::{factor_rational_poly, factor_rational_poly_seeded, rational_roots, Factorization};
pub use fp::{factor_poly_mod_p, factor_poly_mod_p_seeded, PrimeFieldPoly};
pub use matrix::{matrix_kernel, EchelonBasis, RationalMatrix};
pub use poly::{poly_gcd, resultant, RationalPoly};
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}
