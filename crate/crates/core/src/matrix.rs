//! 2×2 determinant-one matrices acting on the projective line `R ∪ {∞}`.
//!
//! `Mat2<T>` only needs ring operations, so it is usable with `f64` for
//! quick numerics; everything that decides a sign (trace classes, orderings
//! of points) asks for an [`ExactField`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_traits::Num;

use crate::error::{Error, Result};
use crate::scalar::{ExactField, Sign};
use crate::word::{Generator, ReducedWord};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

/// `k` as a ring element, by doubling.
pub(crate) fn int_scalar<T: Num + Clone>(k: i64) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut n = k.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        n >>= 1;
    }
    if k < 0 {
        T::zero() - acc
    } else {
        acc
    }
}

impl<T: Num + Clone> Mat2<T> {
    /// Row-major entries; `None` unless `ad − bc = 1`.
    pub fn try_new(a: T, b: T, c: T, d: T) -> Option<Self> {
        let m = Mat2 { a, b, c, d };
        (m.det() == T::one()).then_some(m)
    }

    pub(crate) fn new_unchecked(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new_unchecked(T::one(), T::zero(), T::zero(), T::one())
    }

    /// `A = [[1, 1], [0, 1]]`
    pub fn gen_a() -> Self {
        Self::gen_a_pow(1)
    }

    /// `B_α = [[1, 0], [α, 1]]`
    pub fn gen_b(alpha: &T) -> Self {
        Self::gen_b_pow(alpha, 1)
    }

    /// `A^k = [[1, k], [0, 1]]`
    pub fn gen_a_pow(k: i64) -> Self {
        Mat2::new_unchecked(T::one(), int_scalar(k), T::zero(), T::one())
    }

    /// `B_α^k = [[1, 0], [kα, 1]]`
    pub fn gen_b_pow(alpha: &T, k: i64) -> Self {
        Mat2::new_unchecked(
            T::one(),
            T::zero(),
            int_scalar::<T>(k) * alpha.clone(),
            T::one(),
        )
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new_unchecked(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Self {
        Mat2::new_unchecked(
            self.d.clone(),
            T::zero() - self.b.clone(),
            T::zero() - self.c.clone(),
            self.a.clone(),
        )
    }

    /// `M^n` by binary exponentiation; negative `n` inverts first.
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `h([[a, b], [c, d]]) = [[a, −b], [−c, d]]`
    pub fn mirror(&self) -> Self {
        Mat2::new_unchecked(
            self.a.clone(),
            T::zero() - self.b.clone(),
            T::zero() - self.c.clone(),
            self.d.clone(),
        )
    }

    /// Möbius action `x ↦ (ax + b)/(cx + d)`.
    pub fn apply(&self, x: &ProjPoint<T>) -> ProjPoint<T> {
        match x {
            ProjPoint::Infinity => ProjPoint::from_homogeneous(self.a.clone(), self.c.clone()),
            ProjPoint::Finite(v) => ProjPoint::from_homogeneous(
                self.a.clone() * v.clone() + self.b.clone(),
                self.c.clone() * v.clone() + self.d.clone(),
            ),
        }
    }
}

impl<T: Num + Clone> Mul for &Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, rhs: &Mat2<T>) -> Mat2<T> {
        Mat2::mul(self, rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// The image of a word under `x1 ↦ A`, `x2 ↦ B_α`, multiplied left to right.
pub fn evaluate_word<T: Num + Clone>(word: &ReducedWord, alpha: &T) -> Mat2<T> {
    word.syllables().iter().fold(Mat2::identity(), |acc, s| {
        acc.mul(&syllable_matrix(s.generator, s.exponent, alpha))
    })
}

pub(crate) fn syllable_matrix<T: Num + Clone>(g: Generator, k: i64, alpha: &T) -> Mat2<T> {
    match g {
        Generator::A => Mat2::gen_a_pow(k),
        Generator::B => Mat2::gen_b_pow(alpha, k),
    }
}

/// A point of `R ∪ {∞}` in canonical form: `p/1` or `1/0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint<T> {
    Finite(T),
    Infinity,
}

impl<T: Num + Clone> ProjPoint<T> {
    pub fn zero() -> Self {
        ProjPoint::Finite(T::zero())
    }

    /// Canonical form of `(p : q)`; `(0 : 0)` has no point and is read as `∞`
    /// only when `p ≠ 0`.
    pub fn from_homogeneous(p: T, q: T) -> Self {
        if q.is_zero() {
            debug_assert!(!p.is_zero(), "(0 : 0) is not a projective point");
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(p / q)
        }
    }

    /// Homogeneous coordinates `(p, q)` with `q ∈ {0, 1}`.
    pub fn homogeneous(&self) -> (T, T) {
        match self {
            ProjPoint::Finite(v) => (v.clone(), T::one()),
            ProjPoint::Infinity => (T::one(), T::zero()),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ProjPoint::Finite(v) => Some(v),
            ProjPoint::Infinity => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ProjPoint::Finite(v) => ProjPoint::Finite(T::zero() - v.clone()),
            ProjPoint::Infinity => ProjPoint::Infinity,
        }
    }
}

impl<T: ExactField> ProjPoint<T> {
    /// Real order with `∞` placed after every finite point.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
            (ProjPoint::Infinity, _) => Ordering::Greater,
            (_, ProjPoint::Infinity) => Ordering::Less,
            (ProjPoint::Finite(x), ProjPoint::Finite(y)) => x.cmp_exact(y),
        }
    }

    pub fn height_bits(&self) -> u64 {
        match self {
            ProjPoint::Finite(v) => v.height_bits(),
            ProjPoint::Infinity => 1,
        }
    }
}

impl<T: fmt::Display> fmt::Display for ProjPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(v) => write!(f, "{v}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Elliptic iff `|tr| < 2`, parabolic iff `|tr| = 2`, hyperbolic otherwise,
/// decided exactly through the sign of `tr² − 4`.
pub fn trace_classify<T: ExactField>(m: &Mat2<T>) -> TraceClass {
    let t = m.trace();
    match (t.clone() * &t - T::from_integer(4)).sign() {
        Sign::Negative => TraceClass::Elliptic,
        Sign::Zero => TraceClass::Parabolic,
        Sign::Positive => TraceClass::Hyperbolic,
    }
}

/// `B_α A⁻¹ = [[1, −1], [α, 1 − α]]`
pub fn b_a_inverse<T: Num + Clone>(alpha: &T) -> Mat2<T> {
    Mat2::gen_b(alpha).mul(&Mat2::gen_a_pow(-1))
}

/// Rotation number `(1/π)·arccos((2 − α)/2)` of the elliptic element
/// `B_α A⁻¹`. Floating point; used as a search heuristic, never as a
/// certificate.
pub fn rotation_number<T: ExactField>(alpha: &T) -> Result<f64> {
    let in_range = alpha.sign() == Sign::Positive
        && (T::from_integer(4) - alpha.clone()).sign() == Sign::Positive;
    if !in_range {
        return Err(Error::NotElliptic(alpha.to_string()));
    }
    let x = (2.0 - alpha.approx_f64()) / 2.0;
    Ok(x.clamp(-1.0, 1.0).acos() / std::f64::consts::PI)
}
