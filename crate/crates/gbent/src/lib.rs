//! Spectral analysis of generalized Boolean functions `f: Z_2^n -> Z_q`.
//!
//! The crate provides:
//!
//! - exact Walsh-Hadamard transforms of Boolean functions ([`wht`]) and the
//!   generalized transform over the `q`-th roots of unity ([`gwht`]), with a
//!   cyclotomic-integer backend ([`cyclotomic`]) so that bent and gbent
//!   verdicts never depend on floating-point rounding;
//! - the component decompositions `f = sum 2^i a_i` and
//!   `f = (q/2) a + sum 2^i a_i` ([`decompose`]);
//! - the Hadamard linear system for the coefficients that express
//!   `zeta^{f(x)}` over the sign basis of the components, and the transform
//!   routes it enables ([`alpha`]);
//! - sufficiency predicates for the gbent property in terms of the component
//!   spectra ([`conditions`]);
//! - generators for gbent functions ([`construct`]);
//! - exhaustive and sampled censuses verifying the predicate equivalences at
//!   desk scale ([`search`]).
//!
//! Truth tables use the text format `n q` followed by `2^n` values; see
//! [`function`] for the fixed LSB-first index convention.

pub mod alpha;
pub mod conditions;
pub mod construct;
pub mod cyclotomic;
pub mod decompose;
mod error;
pub mod function;
pub mod gwht;
pub mod search;
pub mod wht;

pub use error::{Error, Result};
pub use function::{BooleanFunction, GeneralizedFunction, ParamQ};
