use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use super::rational::{parse_rational, rational_to_string};
use super::{ExactField, Sign};
use crate::error::{Error, Result};

/// `a + b·√d` with `a, b` rational and `d` a squarefree integer `>= 2`.
///
/// Rational values are stored with `b = 0` and radicand `1`, so they combine
/// with elements of any quadratic field. Two irrational operands with
/// different radicands are a [`Error::FieldMismatch`]; the checked `try_*`
/// methods report it, the operator impls panic on it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadRational {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Splits `n = s²·r` with `r` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut square_root = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square_root *= p;
        }
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square_root, core * n)
}

fn join_radicands(d1: u64, d2: u64) -> Result<u64> {
    match (d1, d2) {
        (1, d) | (d, 1) => Ok(d),
        (x, y) if x == y => Ok(x),
        (x, y) => Err(Error::FieldMismatch(x, y)),
    }
}

impl QuadRational {
    /// Builds `a + b·√d`, pulling square factors of `d` into `b`.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidRadicand(d.to_string()));
        }
        let (s, core) = squarefree_split(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if core == 1 {
            Ok(Self::rational(a + b))
        } else {
            Ok(Self::canonical(a, b, core))
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadRational {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    /// `√d`
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    fn canonical(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            QuadRational {
                a: a + b,
                b: BigRational::zero(),
                d: 1,
            }
        } else {
            QuadRational { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_coeff(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or `None` for a rational value.
    pub fn radicand(&self) -> Option<u64> {
        (self.d != 1).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn conjugate(&self) -> Self {
        QuadRational {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a² − d·b²`
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let d = join_radicands(self.d, rhs.d)?;
        Ok(Self::canonical(&self.a + &rhs.a, &self.b + &rhs.b, d))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        let d = join_radicands(self.d, rhs.d)?;
        Ok(Self::canonical(&self.a - &rhs.a, &self.b - &rhs.b, d))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let d = join_radicands(self.d, rhs.d)?;
        if d == 1 {
            return Ok(Self::rational(&self.a * &rhs.a));
        }
        let dq = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + dq * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Self::canonical(a, b, d))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivByZero);
        }
        join_radicands(self.d, rhs.d)?;
        if rhs.d == 1 {
            return Ok(Self::canonical(&self.a / &rhs.a, &self.b / &rhs.a, self.d));
        }
        // d is not a square, so the norm of a nonzero element is nonzero
        let norm = rhs.norm();
        let num = self.try_mul(&rhs.conjugate())?;
        Ok(Self::canonical(num.a / &norm, num.b / &norm, num.d))
    }

    /// Parses `p/q`, `a+b*sqrt(d)`, `a-b*sqrt(d)`, `b*sqrt(d)` or `sqrt(d)`,
    /// where `a` and `b` are rationals in any form [`parse_rational`] accepts.
    pub fn parse(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::parse("quadratic scalar", input);
        let Some(open) = s.find("sqrt(") else {
            return Ok(Self::rational(parse_rational(&s)?));
        };
        let radicand = s[open + 5..].strip_suffix(')').ok_or_else(err)?;
        let d: u64 = radicand.parse().map_err(|_| err())?;
        let head = &s[..open];
        let head = head.strip_suffix('*').unwrap_or(head);
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (a_text, b_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let a = parse_rational(a_text)?;
        let b = match b_text {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
        };
        if d == 0 {
            return Err(Error::InvalidRadicand(radicand.to_string()));
        }
        Self::new(a, b, d)
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            return f.write_str(&rational_to_string(&self.a));
        }
        let sep = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            rational_to_string(&self.a),
            sep,
            rational_to_string(&self.b.abs()),
            self.d
        )
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadRational> for QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: &QuadRational) -> QuadRational {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadRational> for QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: QuadRational) -> QuadRational {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<&QuadRational> for &QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: &QuadRational) -> QuadRational {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

// Exact division leaves no remainder in a field.
impl Rem<&QuadRational> for QuadRational {
    type Output = QuadRational;
    fn rem(self, rhs: &QuadRational) -> QuadRational {
        if rhs.is_zero() {
            panic!("{}", Error::DivByZero);
        }
        QuadRational::zero()
    }
}

impl Rem<QuadRational> for QuadRational {
    type Output = QuadRational;
    fn rem(self, rhs: QuadRational) -> QuadRational {
        self % &rhs
    }
}

impl Neg for QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Zero for QuadRational {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadRational {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl Num for QuadRational {
    type FromStrRadixErr = Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self> {
        if radix != 10 {
            return Err(Error::parse("quadratic scalar (radix 10 only)", s));
        }
        Self::parse(s)
    }
}

impl From<BigRational> for QuadRational {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

/// `⌊√(d·10^{2k})⌋ / 10^k`, within `10^-k` below `√d`.
fn sqrt_lower(d: u64, k: u32) -> BigRational {
    let scale = num_traits::pow(BigInt::from(10), k as usize);
    let root = (BigInt::from(d) * &scale * &scale).sqrt();
    BigRational::new(root, scale)
}

impl ExactField for QuadRational {
    fn sign(&self) -> Sign {
        let sa = Sign::of_int(self.a.numer());
        let sb = Sign::of_int(self.b.numer());
        match (sa, sb) {
            (s, Sign::Zero) | (Sign::Zero, s) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: the larger of a² and d·b² wins
                let a2 = &self.a * &self.a;
                let db2 = BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
                if a2 > db2 {
                    sa
                } else {
                    // equality would make d a rational square
                    sb
                }
            }
        }
    }

    fn from_rational(q: BigRational) -> Self {
        Self::rational(q)
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn approx_rational(&self, digits: u32) -> BigRational {
        if self.d == 1 {
            return self.a.clone();
        }
        let b_digits = (self.b.abs().ceil().to_integer().bits() as u32 * 3) / 10 + 1;
        &self.a + &self.b * sqrt_lower(self.d, digits + b_digits + 1)
    }

    fn approx_f64(&self) -> f64 {
        ToPrimitive::to_f64(&self.approx_rational(20)).unwrap_or(f64::NAN)
    }

    fn height_bits(&self) -> u64 {
        [
            self.a.numer(),
            self.a.denom(),
            self.b.numer(),
            self.b.denom(),
        ]
        .iter()
        .map(|n| n.bits())
        .max()
        .unwrap_or(0)
    }

    fn to_scalar(&self) -> super::Scalar {
        super::Scalar::from(self.clone())
    }
}
