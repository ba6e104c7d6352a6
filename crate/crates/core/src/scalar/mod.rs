//! Exact scalar tower: rationals, polynomials over the fixed variables
//! `s < u < v < h`, rational functions and truncated power series in `h`.

mod parse;
mod poly;
mod ratfunc;
mod series;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use poly::{Monomial, MultiPoly};
pub use ratfunc::{Point, RatFunc};
pub use series::TruncatedSeries;

/// Arbitrary-precision rational; always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// The four global variables, in their fixed order `s < u < v < h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    S = 0,
    U = 1,
    V = 2,
    H = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::S, Var::U, Var::V, Var::H];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::U => "u",
            Var::V => "v",
            Var::H => "h",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "s" => Some(Var::S),
            "u" => Some(Var::U),
            "v" => Some(Var::V),
            "h" => Some(Var::H),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("substitution {0} -> {1} makes the denominator vanish")]
    SubstitutionPole(Var, String),
    #[error("denominator vanishes at the evaluation point")]
    EvalPole,
    #[error("variable {0} is not bound by the evaluation point")]
    UnboundVariable(Var),
    #[error("denominator vanishes at h = 0; no power series expansion")]
    PoleAtExpansionPoint,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Minimal ring interface used by the tensor layer.
///
/// Implemented by [`Rational`] and [`RatFunc`]; method names avoid clashing
/// with the `std::ops` traits both types also implement.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    parse::parse_rational(text)
}
