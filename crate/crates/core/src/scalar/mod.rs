//! Exact scalars: reduced big rationals and elements of real quadratic fields.
//!
//! Everything downstream (matrices, orbit points, Sturm evaluation) is generic
//! over [`ExactField`], which both [`BigRational`] and [`QuadRational`]
//! implement. [`Scalar`] is the tagged union used at the text and JSON
//! boundary, where the field is not known until the input has been parsed.

mod quadratic;
mod rational;
mod tagged;

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::NumRef;

pub use quadratic::QuadRational;
pub use rational::{
    format_decimal, half_odd_integer_rational, normalize, parse_rational, rational_to_string,
    DEFAULT_DECIMAL_DIGITS,
};
pub use tagged::{exact_sign, half_odd_integer, ArithOp, Scalar};

/// Runs `$body` with `$x` bound to the concrete field element inside a
/// [`Scalar`].
macro_rules! on_field {
    ($s:expr, $x:ident => $body:expr) => {
        match $s {
            $crate::scalar::Scalar::Rational($x) => $body,
            $crate::scalar::Scalar::Quadratic($x) => $body,
        }
    };
}
pub(crate) use on_field;

/// Sign of an exact real value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_int(n: &BigInt) -> Sign {
        match n.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real field with exact arithmetic and decidable sign.
///
/// `Num` supplies the ring constants and by-value operators; `NumRef` adds
/// `T op &T` so hot loops can avoid cloning the right operand.
pub trait ExactField:
    NumRef + Neg<Output = Self> + Clone + Eq + Hash + Debug + Display + Send + Sync
{
    fn sign(&self) -> Sign;

    fn from_rational(q: BigRational) -> Self;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The value as a rational, if it is one.
    fn to_rational(&self) -> Option<BigRational>;

    /// Rational approximation within `10^-digits`.
    fn approx_rational(&self, digits: u32) -> BigRational;

    fn approx_f64(&self) -> f64;

    /// Largest bit length among the integers of the canonical representation.
    fn height_bits(&self) -> u64;

    /// The value at the tagged boundary type.
    fn to_scalar(&self) -> Scalar;

    fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self.clone() - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    fn to_decimal(&self, significant: usize) -> String {
        match self.to_rational() {
            Some(q) => format_decimal(&q, significant),
            None => format_decimal(&self.approx_rational(significant as u32 + 20), significant),
        }
    }
}
