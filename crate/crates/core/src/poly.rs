//! Dense univariate polynomials with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{ExactField, Sign};

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly::default()
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> IntPoly {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the (positive) content; signs are preserved.
    pub fn content_reduce(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    /// Content-reduced with a positive leading coefficient; this is the
    /// integer-cleared form of the monic associate over `Q`.
    pub fn primitive_part(&self) -> IntPoly {
        let p = self.content_reduce();
        if p.leading_coeff().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self · x^k`
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `den^deg · p(num/den)`, an integer with the sign of `p(num/den)`.
    pub fn eval_homogeneous(&self, x: &BigRational) -> BigInt {
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Sign {
        Sign::of_int(&self.eval_homogeneous(x))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Horner evaluation in any exact field.
    pub fn eval<T: ExactField>(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| {
            acc * x + T::from_rational(BigRational::from_integer(c.clone()))
        })
    }

    /// `lc(d)^(deg self − deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let db = divisor
            .degree()
            .expect("pseudo-division by zero polynomial");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = divisor.leading_coeff().unwrap();
        let mut r = self.clone();
        let mut steps = 0usize;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading_coeff().unwrap().clone();
            r = r.scale(lb) - divisor.scale(&lr).shift(dr - db);
            steps += 1;
        }
        let missing = da - db + 1 - steps;
        if missing > 0 {
            r = r.scale(&num_traits::pow(lb.clone(), missing));
        }
        r
    }

    /// Exact quotient over `Z`, or `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let db = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let lb = divisor.leading_coeff().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); (self.degree()? + 1).saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (quot, rem) = r.leading_coeff().unwrap().div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            r = r - divisor.scale(&quot).shift(dr - db);
            q[dr - db] = quot;
        }
        Some(IntPoly::new(q))
    }

    /// Greatest common divisor by the subresultant remainder sequence,
    /// normalized primitive with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = match (self.degree(), other.degree()) {
            (None, None) => return IntPoly::zero(),
            (None, Some(_)) => return other.primitive_part(),
            (Some(_), None) => return self.primitive_part(),
            (Some(x), Some(y)) if x >= y => (self.primitive_part(), other.primitive_part()),
            _ => (other.primitive_part(), self.primitive_part()),
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive_part();
            }
            if r.degree() == Some(0) {
                return IntPoly::one();
            }
            let divisor = &g * num_traits::pow(h.clone(), delta);
            a = b;
            b = IntPoly::new(r.coeffs.iter().map(|c| c / &divisor).collect());
            g = a.leading_coeff().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
            };
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `p / gcd(p, p′)`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        match g.degree() {
            Some(d) if d > 0 => self
                .div_exact(&g)
                .expect("gcd divides its argument")
                .primitive_part(),
            _ => self.primitive_part(),
        }
    }

    /// Resultant by the subresultant algorithm.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return BigInt::zero();
        };
        let (mut a, mut b, mut s) = if da < db {
            let s = if (da * db) % 2 == 1 { -1 } else { 1 };
            (other.clone(), self.clone(), BigInt::from(s))
        } else {
            (self.clone(), other.clone(), BigInt::one())
        };
        let ca = a.content();
        let cb = b.content();
        a = a.content_reduce();
        b = b.content_reduce();
        let t = num_traits::pow(ca, b.degree().unwrap()) * num_traits::pow(cb, a.degree().unwrap());
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        while b.degree().unwrap() > 0 {
            let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
            let delta = dega - degb;
            if dega % 2 == 1 && degb % 2 == 1 {
                s = -s;
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return BigInt::zero();
            }
            let divisor = &g * num_traits::pow(h.clone(), delta);
            a = b;
            b = IntPoly::new(r.coeffs.iter().map(|c| c / &divisor).collect());
            g = a.leading_coeff().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
            };
        }
        let dega = a.degree().unwrap();
        let lb = b.leading_coeff().unwrap().clone();
        let h = if dega == 0 {
            h
        } else {
            num_traits::pow(lb, dega) / num_traits::pow(h, dega - 1)
        };
        s * t * h
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

macro_rules! by_value {
    ($trait:ident, $method:ident) => {
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

/// `a_n*x^n + ... + a_0`, unit coefficients elided.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => f.write_str(&mono)?,
                _ => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as an ascending array of decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}
