use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactField, Sign};
use crate::error::{Error, Result};

/// Significant digits used when rendering approximations in reports.
pub const DEFAULT_DECIMAL_DIGITS: usize = 30;

/// Canonical `num/den`: positive denominator, coprime parts, zero as `0/1`.
pub fn normalize(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

/// Returns `n` when `q = (2n+1)/2` exactly.
pub fn half_odd_integer_rational(q: &BigRational) -> Option<BigInt> {
    if *q.denom() == BigInt::from(2) {
        // numerator is odd because the fraction is reduced
        Some((q.numer() - 1u32).div_floor(&BigInt::from(2)))
    } else {
        None
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q`, an integer, or a decimal with optional exponent (`1e-12`,
/// `-0.25`, `3.5E2`). Decimals are converted exactly.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let err = || Error::parse("rational", input);
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| err())?;
        let den: BigInt = d.trim().parse().map_err(|_| err())?;
        return normalize(num, den);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let all: BigInt = format!("0{int_part}{frac_part}")
        .parse()
        .map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

/// Decimal rendering to `significant` digits, rounded half away from zero.
pub fn format_decimal(q: &BigRational, significant: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let significant = significant.max(1);
    let negative = q.is_negative();
    let abs = q.abs();
    // exponent e with 10^e <= |q| < 10^(e+1)
    let mut e: i64 = (abs.numer().bits() as i64 - abs.denom().bits() as i64) * 30103 / 100000;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(BigInt::from(10), k as usize))
        } else {
            BigRational::new(
                BigInt::one(),
                num_traits::pow(BigInt::from(10), (-k) as usize),
            )
        }
    };
    while pow10(e) > abs {
        e -= 1;
    }
    while pow10(e + 1) <= abs {
        e += 1;
    }
    let shift = significant as i64 - 1 - e;
    let scaled = &abs * pow10(shift);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut digits = (scaled + half).floor().to_integer().to_string();
    let mut shift = shift;
    if digits.len() > significant {
        // rounding carried into a new leading digit
        digits.pop();
        shift -= 1;
    }
    let body = if shift <= 0 {
        let mut s = digits;
        s.extend(std::iter::repeat_n('0', (-shift) as usize));
        s
    } else if (shift as usize) >= digits.len() {
        let zeros = shift as usize - digits.len();
        format!("0.{}{}", "0".repeat(zeros), digits)
    } else {
        let split = digits.len() - shift as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn int_bits(n: &BigInt) -> u64 {
    n.bits()
}

impl ExactField for BigRational {
    fn sign(&self) -> Sign {
        Sign::of_int(self.numer())
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn approx_rational(&self, _digits: u32) -> BigRational {
        self.clone()
    }

    fn approx_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn height_bits(&self) -> u64 {
        int_bits(self.numer()).max(int_bits(self.denom()))
    }

    fn to_scalar(&self) -> super::Scalar {
        super::Scalar::Rational(self.clone())
    }
}
