//! Error type shared across the crate.

use std::fmt;

/// Errors produced by table parsing, transforms and predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `q` is odd (and not 2); the spectral machinery here requires even `q`.
    OddModulus { q: u32 },
    /// `q` is zero, one, or too large for the exact backend.
    InvalidModulus { q: u32 },
    /// Variable count outside the supported range `1..=30`.
    InvalidVariableCount { n: u32 },
    /// Truth table length does not equal `2^n`.
    TableLength { expected: usize, got: usize },
    /// Table entry at position `x` is `>= q`.
    ValueOutOfRange { x: usize, value: u32, q: u32 },
    /// Malformed truth-table text.
    Parse(String),
    /// Two functions with different variable counts were combined.
    DimensionMismatch { left: u32, right: u32 },
    /// Vectors of different lengths were combined.
    LengthMismatch { left: usize, right: usize },
    /// A component sum exceeded `q - 1` at input `x`.
    ComponentOverflow { x: usize, value: u64, q: u32 },
    /// Basis size `2^p` exceeds the supported cap.
    BasisTooLarge { p: u32 },
    /// The implicit-formula oracle only runs for small `h`.
    WidthTooLarge { h: u32 },
    /// An alpha vector solved for one `(q, p)` was applied to another.
    ParamMismatch { expected: (u32, u32), got: (u32, u32) },
    /// A predicate was invoked with the wrong variable-count parity.
    ParityMismatch { required: &'static str, n: u32 },
    /// A predicate was invoked with an unsupported modulus.
    ModulusMismatch { required: String, got: u32 },
    /// The image vector is not a bijection on `[0, 2^n)`.
    NotAPermutation,
    /// A construction input that must be bent is not.
    NotBent(&'static str),
    /// Exhaustive enumeration was requested on a space over the cap.
    SpaceTooLarge { log2_size: u32, log2_cap: u32 },
    /// Reports with incompatible parameters were merged.
    MergeMismatch,
    /// An internal exactness invariant failed; indicates a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OddModulus { q } => {
                write!(f, "q = {q} is odd; generalized bent analysis requires even q")
            }
            Error::InvalidModulus { q } => write!(f, "unsupported modulus q = {q}"),
            Error::InvalidVariableCount { n } => {
                write!(f, "variable count n = {n} outside supported range 1..=30")
            }
            Error::TableLength { expected, got } => {
                write!(f, "truth table has {got} entries, expected {expected}")
            }
            Error::ValueOutOfRange { x, value, q } => {
                write!(f, "table value {value} at index {x} is >= q = {q}")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "variable counts differ: {left} vs {right}")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            Error::ComponentOverflow { x, value, q } => {
                write!(f, "component sum {value} at index {x} exceeds q - 1 = {}", q - 1)
            }
            Error::BasisTooLarge { p } => write!(f, "basis exponent p = {p} exceeds cap 12"),
            Error::WidthTooLarge { h } => {
                write!(f, "implicit formula is exponential in h; h = {h} exceeds cap 5")
            }
            Error::ParamMismatch { expected, got } => write!(
                f,
                "coefficients solved for (q, p) = {expected:?} applied to {got:?}"
            ),
            Error::ParityMismatch { required, n } => {
                write!(f, "predicate requires {required} variable count, got n = {n}")
            }
            Error::ModulusMismatch { required, got } => {
                write!(f, "predicate requires q {required}, got q = {got}")
            }
            Error::NotAPermutation => write!(f, "image vector is not a permutation"),
            Error::NotBent(which) => write!(f, "{which} must be bent"),
            Error::SpaceTooLarge { log2_size, log2_cap } => write!(
                f,
                "function space has ~2^{log2_size} elements, exhaustive cap is 2^{log2_cap}"
            ),
            Error::MergeMismatch => write!(f, "cannot merge reports with different parameters"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
