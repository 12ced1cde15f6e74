//! Exact models of sequence spaces with Hamel-basis norms.
//!
//! The crate works over the rationals throughout. Finitely supported
//! sequences ([`FinSuppVec`]) and polynomials ([`Poly`]) are generic over any
//! [`Scalar`]; everything that needs arbitrary precision (root enclosures,
//! operators, certificates) is fixed to [`Rational`].
//!
//! Norm values are carried as exact p-th powers wherever possible, so most
//! inequalities are decided by integer cross-multiplication rather than by
//! approximating roots.

pub mod axioms;
pub mod certificate;
pub mod demo;
pub mod error;
pub mod finsupp;
pub mod norm;
pub mod operators;
pub mod polyspace;
pub mod sample;
pub mod scalar;
pub mod witness;

pub use certificate::{Certificate, Row, Verdict};
pub use error::{Error, Result};
pub use finsupp::{FinSuppVec, Index};
pub use norm::{NormSpec, NormValue};
pub use operators::{Element, Functional, Growth, LinearMap};
pub use polyspace::Poly;
pub use scalar::{Enclosure, Exponent, Scalar};

/// Arbitrary-precision rational, the scalar field of every certificate.
pub type Rational = num_rational::BigRational;

/// Finitely supported rational sequence.
pub type Vector = FinSuppVec<Rational>;

/// Polynomial with rational coefficients.
pub type Polynomial = Poly<Rational>;
