//! Exact polynomial arithmetic over the rationals.
//!
//! [`MultiPoly`] is a sparse multivariate polynomial with named variables,
//! [`UniPoly`] a dense univariate one used for Sturm sequences and sign
//! certificates, and [`SurdRelation`] adjoins a single square root.
//! The [`identities`] module uses all three to check the algebra behind
//! the convexity results exactly.

pub mod identities;
mod multipoly;
mod parse;
mod surd;
mod univariate;

pub use identities::{verify_identity, IdentityId, IdentityOutcome};
pub use multipoly::MultiPoly;
pub use num_rational::BigRational;
pub use surd::SurdRelation;
pub use univariate::{
    refine_root, sign_certificate, sturm_count, sturm_isolate, Bound, Certificate, RootInterval,
    Sign, UniPoly,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Builds a rational from a numerator and denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Builds an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact rational value of a binary64 number.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Nearest binary64 to an exact rational.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
