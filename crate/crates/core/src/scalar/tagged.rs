use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::rational::{half_odd_integer_rational, parse_rational, rational_to_string};
use super::{ExactField, QuadRational, Sign};
use crate::error::{Error, Result};

/// An exact scalar whose field is decided by the input.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic(QuadRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    /// Parses the scalar text form; quadratic input with a vanishing
    /// irrational part collapses to [`Scalar::Rational`].
    pub fn parse(input: &str) -> Result<Scalar> {
        if !input.contains("sqrt") {
            return Ok(Scalar::Rational(parse_rational(input)?));
        }
        Ok(Scalar::from(QuadRational::parse(input)?))
    }

    pub fn to_quadratic(&self) -> QuadRational {
        match self {
            Scalar::Rational(q) => QuadRational::rational(q.clone()),
            Scalar::Quadratic(x) => x.clone(),
        }
    }

    pub fn radicand(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quadratic(x) => x.radicand(),
        }
    }

    pub fn abs(&self) -> Scalar {
        if exact_sign(self) == Sign::Negative {
            match self {
                Scalar::Rational(q) => Scalar::Rational(-q.clone()),
                Scalar::Quadratic(x) => Scalar::Quadratic(-x.clone()),
            }
        } else {
            self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Quadratic(x) => x.is_zero(),
        }
    }

    /// Field operation in the common ambient field.
    pub fn checked_arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, other) {
            return match op {
                ArithOp::Add => Ok(Scalar::Rational(x + y)),
                ArithOp::Sub => Ok(Scalar::Rational(x - y)),
                ArithOp::Mul => Ok(Scalar::Rational(x * y)),
                ArithOp::Div if y.is_zero() => Err(Error::DivByZero),
                ArithOp::Div => Ok(Scalar::Rational(x / y)),
            };
        }
        let (x, y) = (self.to_quadratic(), other.to_quadratic());
        let r = match op {
            ArithOp::Add => x.try_add(&y),
            ArithOp::Sub => x.try_sub(&y),
            ArithOp::Mul => x.try_mul(&y),
            ArithOp::Div => x.try_div(&y),
        }?;
        Ok(Scalar::from(r))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => q.approx_f64(),
            Scalar::Quadratic(x) => x.approx_f64(),
        }
    }

    pub fn to_decimal(&self, significant: usize) -> String {
        match self {
            Scalar::Rational(q) => q.to_decimal(significant),
            Scalar::Quadratic(x) => x.to_decimal(significant),
        }
    }
}

impl From<QuadRational> for Scalar {
    fn from(x: QuadRational) -> Self {
        match x.to_rational() {
            Some(q) => Scalar::Rational(q),
            None => Scalar::Quadratic(x),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&rational_to_string(q)),
            Scalar::Quadratic(x) => write!(f, "{x}"),
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Scalar::parse(&text).map_err(serde::de::Error::custom)
    }
}

pub fn exact_sign(x: &Scalar) -> Sign {
    match x {
        Scalar::Rational(q) => ExactField::sign(q),
        Scalar::Quadratic(x) => x.sign(),
    }
}

/// `n` such that `x = (2n+1)/2`, if `x` is such a half-odd integer.
pub fn half_odd_integer(x: &Scalar) -> Option<BigInt> {
    match x {
        Scalar::Rational(q) => half_odd_integer_rational(q),
        Scalar::Quadratic(x) => x.to_rational().and_then(|q| half_odd_integer_rational(&q)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        Scalar::parse(text).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let x = s("2+1*sqrt(2)");
        let y = s("2-1*sqrt(2)");
        assert_eq!(x.checked_arith(&y, ArithOp::Mul).unwrap(), s("2"));
        assert_eq!(
            s("1").checked_arith(&x, ArithOp::Div).unwrap(),
            s("1-1/2*sqrt(2)")
        );
        assert_eq!(x.checked_arith(&s("0"), ArithOp::Add).unwrap(), x);
        assert_eq!(
            s("1/2").checked_arith(&s("0"), ArithOp::Div),
            Err(Error::DivByZero)
        );
        assert_eq!(
            s("sqrt(2)").checked_arith(&s("sqrt(3)"), ArithOp::Sub),
            Err(Error::FieldMismatch(2, 3))
        );
    }

    #[test]
    fn sign_examples() {
        assert_eq!(exact_sign(&s("1-1*sqrt(2)")), Sign::Negative);
        assert_eq!(exact_sign(&s("2+1*sqrt(2)")), Sign::Positive);
        assert_eq!(exact_sign(&s("0")), Sign::Zero);
    }

    #[test]
    fn half_odd_examples() {
        assert_eq!(half_odd_integer(&s("45/2")), Some(22.into()));
        assert_eq!(half_odd_integer(&s("1/2")), Some(0.into()));
        assert_eq!(half_odd_integer(&s("7/3")), None);
        assert_eq!(half_odd_integer(&s("1/2+1*sqrt(2)")), None);
    }

    #[test]
    fn abs_normalizes_negative() {
        assert_eq!(s("-41/18").abs(), s("41/18"));
        assert_eq!(s("-2-1*sqrt(2)").abs(), s("2+1*sqrt(2)"));
        assert_eq!(s("1-1*sqrt(2)").abs(), s("-1+1*sqrt(2)"));
    }
}
