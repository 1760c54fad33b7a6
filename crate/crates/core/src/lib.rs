//! Exact certification of relation numbers for `G_α = ⟨A, B_α⟩ ⊂ SL(2, R)`,
//! where `A = [[1, 1], [0, 1]]` and `B_α = [[1, 0], [α, 1]]`.
//!
//! Three independent routes produce machine-checkable evidence that `α` is a
//! relation number (the group is not free of rank two):
//!
//! * [`orbit`]: a group element sending `0` or `∞` to a half-odd integer;
//! * [`farey`]: a cycle in the generalized Farey graph `Γ_α`;
//! * [`convergence`]: `α` is a root of a relation polynomial `p_n`, whose
//!   maximal roots increase to `4`.
//!
//! The geometry is generic over the scalar field ([`scalar::ExactField`]);
//! the aliases below fix the two fields used in practice.

pub mod convergence;
pub mod error;
pub mod farey;
pub mod matrix;
pub mod orbit;
pub mod poly;
pub mod relation;
pub mod roots;
pub mod scalar;
pub mod word;

use num_rational::BigRational;

pub use error::{Error, Result};
pub use matrix::{Mat2, ProjPoint};
pub use poly::IntPoly;
pub use roots::{IsolatingInterval, SturmChain};
pub use scalar::{ExactField, QuadRational, Scalar, Sign};
pub use word::{Generator, ReducedWord};

/// Rational scalars.
pub type Rat = BigRational;
/// Elements of a real quadratic field `Q(√d)`.
pub type Quad = QuadRational;

pub type RatMat2 = Mat2<BigRational>;
pub type QuadMat2 = Mat2<QuadRational>;
pub type F64Mat2 = Mat2<f64>;

pub type RatPoint = ProjPoint<BigRational>;
pub type QuadPoint = ProjPoint<QuadRational>;
