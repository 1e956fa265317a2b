//! Exact-arithmetic toolkit that decides whether the iterates `f^n(x) - a` of an
//! integer polynomial stay monogenic, i.e. whether each iterate's root generates
//! the full ring of integers of the field it defines.
//!
//! The crate is organized around a fast criterion engine and an independent
//! brute-force oracle that cross-check each other:
//!
//! * [`intpoly`] — dense exact polynomials over ℤ (plus ℚ scalars and ℤ/m images),
//! * [`ffpoly`] — polynomial algebra and factorization over 𝔽_p,
//! * [`maximality`] — the ground-truth p-maximality oracles (two independent ones),
//! * [`dyncrit`] — the critical-lift engine certifying all iterates at once,
//! * [`irreducibility`] — semi-decision procedures for irreducibility over ℚ,
//! * [`families`] — closed-form checkers for unicritical, `1 - x^d`, Chebyshev and
//!   radical/real tower families,
//! * [`density`] — bulk scans with Euler-product density predictions.

pub mod arith;
pub mod density;
pub mod dyncrit;
pub mod families;
pub mod ffpoly;
pub mod intpoly;
pub mod irreducibility;
pub mod maximality;
pub mod modpoly;

pub use intpoly::{IntPoly, RatScalar};
pub use modpoly::ModPoly;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Serialize a BigInt as a JSON number when it fits in i64, as a decimal
/// string otherwise.
pub(crate) fn serde_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_i64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn serde_opt_bigint<S: serde::Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => serde_bigint(v, s),
        None => s.serialize_none(),
    }
}

/// Default cap on the degree of any polynomial produced by iteration.
/// Covers `d <= 4, n <= 5` and `d <= 2, n <= 12`. Overridable per call and via
/// the `MONODYN_MAX_DEGREE` environment variable in the CLI.
pub const DEFAULT_MAX_DEGREE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("iterate degree {degree} exceeds the guard {guard}")]
    DegreeOverflow { degree: usize, guard: usize },
    #[error("reciprocal transform is not monic: f^n(c) != gamma")]
    NotMonic,
    #[error("operands live over different moduli")]
    ModulusMismatch,
    #[error("polynomial is not a p-th power in F_p[x]")]
    NotAPthPower,
    #[error("modulus {0} is not prime")]
    NotPrime(BigInt),
    #[error("leading coefficient must be +1 or -1")]
    BadLeadingCoeff,
    #[error("discriminant is zero (polynomial not squarefree)")]
    DiscriminantZero,
    #[error("integer factorization timed out, unfactored cofactor {0}")]
    FactorizationTimeout(BigInt),
    #[error("prime has the wrong vanishing/non-vanishing kind for this test")]
    WrongKind,
    #[error("factor lift must be monic")]
    NotMonicFactor,
    #[error("all-n mode requires a PCF polynomial with rational critical points")]
    NotPCFRational,
    #[error("denominator is not invertible modulo p^2")]
    NonInvertibleDenominator,
    #[error("constant term must be a unit (+1 or -1)")]
    NonUnitConstantTerm,
    #[error("empty or reversed range")]
    BadRange,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
