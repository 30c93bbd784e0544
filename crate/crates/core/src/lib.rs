//! Exact computation of relations among kappa classes in the tautological
//! ring of the moduli space of smooth genus-g curves.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`]: rationals, binomials, Bernoulli numbers.
//! * [`series`]: truncated power series in one or two variables.
//! * [`coeffs`]: the coefficient tables `q`, `c`, `alpha`, `p` and their
//!   identities.
//! * [`tautring`]: weighted κ-polynomials and relation extraction.
//! * [`relations`]: generation of κ_a by lower classes, nonvanishing scans and
//!   independence checks.
//! * [`output`] and [`cache`]: canonical JSON/CSV encodings and the on-disk
//!   table cache used by the `tautrel` binary.

pub mod cache;
pub mod coeffs;
pub mod error;
pub mod exact;
pub mod output;
pub mod relations;
pub mod series;
pub mod tautring;

pub use error::{Error, Result};
pub use exact::Rational;
