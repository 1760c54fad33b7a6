//! Entries of `(B_α A⁻¹)ⁿ` as integer polynomials in `α`, and the
//! polynomials derived from them.
//!
//! With `(B_α A⁻¹)ⁿ = [[t_n, u_n], [m_n, l_n]]`, the column `(u_n, l_n)`
//! obeys `u_{n+1} = u_n − l_n`, `l_{n+1} = α·u_n + (1 − α)·l_n` from
//! `u_1 = −1`, `l_1 = 1 − α`. The relation polynomial is
//! `p_n = (−1)^{n+1}·(2u_n − l_n)`: its roots are exactly the `α` where
//! `(B_α A⁻¹)ⁿ(0) = 1/2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::poly::IntPoly;
use crate::scalar::ExactField;

/// A 2×2 matrix of integer polynomials in `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat2 {
    pub t: IntPoly,
    pub u: IntPoly,
    pub m: IntPoly,
    pub l: IntPoly,
}

impl PolyMat2 {
    pub fn identity() -> PolyMat2 {
        PolyMat2 {
            t: IntPoly::one(),
            u: IntPoly::zero(),
            m: IntPoly::zero(),
            l: IntPoly::one(),
        }
    }

    /// `B_α A⁻¹ = [[1, −1], [α, 1 − α]]`
    pub fn step() -> PolyMat2 {
        PolyMat2 {
            t: IntPoly::one(),
            u: IntPoly::from_i64(&[-1]),
            m: IntPoly::x(),
            l: IntPoly::from_i64(&[1, -1]),
        }
    }

    /// `step · self`
    fn advance(&self) -> PolyMat2 {
        let one_minus_x = IntPoly::from_i64(&[1, -1]);
        let x = IntPoly::x();
        PolyMat2 {
            t: &self.t - &self.m,
            u: &self.u - &self.l,
            m: &(&x * &self.t) + &(&one_minus_x * &self.m),
            l: &(&x * &self.u) + &(&one_minus_x * &self.l),
        }
    }

    pub fn det(&self) -> IntPoly {
        &(&self.t * &self.l) - &(&self.u * &self.m)
    }

    pub fn eval_at<T: ExactField>(&self, alpha: &T) -> Mat2<T> {
        Mat2::new_unchecked(
            self.t.eval(alpha),
            self.u.eval(alpha),
            self.m.eval(alpha),
            self.l.eval(alpha),
        )
    }
}

/// `(B_α A⁻¹)ⁿ` as polynomials; `n = 0` gives the identity.
pub fn power_matrix(n: usize) -> PolyMat2 {
    let mut acc = PolyMat2::identity();
    for _ in 0..n {
        acc = acc.advance();
    }
    acc
}

/// `(B_α A⁻¹)ⁿ` for `n = 1..=n_max`, sharing the recurrence.
pub fn power_matrices(n_max: usize) -> Vec<PolyMat2> {
    let mut out = Vec::with_capacity(n_max);
    let mut acc = PolyMat2::identity();
    for _ in 0..n_max {
        acc = acc.advance();
        out.push(acc.clone());
    }
    out
}

fn relation_from(pm: &PolyMat2, n: usize) -> IntPoly {
    let p = &pm.u.scale(&BigInt::from(2)) - &pm.l;
    if n % 2 == 1 {
        p
    } else {
        -p
    }
}

/// `p_n = (−1)^{n+1}·(2u_n − l_n)`, monic of degree `n`.
pub fn relation_poly(n: usize) -> IntPoly {
    assert!(n >= 1, "relation polynomials start at n = 1");
    relation_from(&power_matrix(n), n)
}

/// `p_1, …, p_{n_max}`.
pub fn relation_polys(n_max: usize) -> Vec<IntPoly> {
    power_matrices(n_max)
        .iter()
        .enumerate()
        .map(|(i, pm)| relation_from(pm, i + 1))
        .collect()
}

/// `u′·l − u·l′`: the numerator of the derivative of `u/l`.
pub fn wronskian_of(u: &IntPoly, l: &IntPoly) -> IntPoly {
    &(&u.derivative() * l) - &(u * &l.derivative())
}

/// `W_n = u_n′·l_n − u_n·l_n′`.
pub fn wronskian(n: usize) -> IntPoly {
    let pm = power_matrix(n);
    wronskian_of(&pm.u, &pm.l)
}

/// Content-reduced numerator of `u_n − t·l_n`, whose roots are the `α` with
/// `(B_α A⁻¹)ⁿ(0) = t`.
pub fn preimage_poly(n: usize, t: &BigRational) -> Result<IntPoly> {
    let pm = power_matrix(n);
    preimage_from(&pm, t)
}

pub(crate) fn preimage_from(pm: &PolyMat2, t: &BigRational) -> Result<IntPoly> {
    if t.is_zero() {
        return Err(Error::DegenerateTarget);
    }
    let p = &pm.u.scale(t.denom()) - &pm.l.scale(t.numer());
    Ok(p.content_reduce())
}

/// `(−1)^n`
pub(crate) fn alternating(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::b_a_inverse;
    use crate::roots::SturmChain;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn first_powers() {
        let pm1 = power_matrix(1);
        assert_eq!(pm1.u, p(&[-1]));
        assert_eq!(pm1.l, p(&[1, -1]));
        let pm2 = power_matrix(2);
        assert_eq!(pm2.u, p(&[-2, 1]));
        assert_eq!(pm2.l, p(&[1, -3, 1]));
    }

    #[test]
    fn determinant_identity() {
        for (i, pm) in power_matrices(25).iter().enumerate() {
            assert_eq!(pm.det(), IntPoly::one(), "n = {}", i + 1);
        }
    }

    #[test]
    fn degrees_and_leading_coefficients() {
        for (i, pm) in power_matrices(25).iter().enumerate() {
            let n = i + 1;
            assert_eq!(pm.u.degree(), Some(n - 1));
            assert_eq!(pm.l.degree(), Some(n));
            assert_eq!(pm.u.leading_coeff(), Some(&alternating(n)));
            assert_eq!(pm.l.leading_coeff(), Some(&alternating(n)));
        }
    }

    #[test]
    fn first_relation_polys() {
        assert_eq!(relation_poly(1), p(&[-3, 1]));
        assert_eq!(relation_poly(2), p(&[5, -5, 1]));
        let p3 = relation_poly(3);
        assert!(p3.is_monic());
        assert_eq!(p3.degree(), Some(3));
        for (k, c) in p3.coeffs().iter().enumerate() {
            let expected = if (3 - k) % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                c.sign() == num_bigint::Sign::Plus,
                expected == 1,
                "coeff {k}"
            );
        }
    }

    #[test]
    fn relation_polys_agree_with_single() {
        let all = relation_polys(8);
        for n in 1..=8 {
            assert_eq!(all[n - 1], relation_poly(n));
        }
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian(1), p(&[-1]));
        for n in 1..=10 {
            let w = wronskian(n);
            assert_eq!(
                w.sign_at(&BigRational::zero()),
                crate::Sign::Negative,
                "n = {n}"
            );
            let chain = SturmChain::new(&w).unwrap();
            assert_eq!(chain.total_count(), 0, "n = {n}");
        }
    }

    #[test]
    fn preimage_examples() {
        let half = BigRational::new(1.into(), 2.into());
        for n in 1..=8 {
            let pre = preimage_poly(n, &half).unwrap();
            let pn = relation_poly(n);
            assert!(pre == pn || pre == -pn.clone(), "n = {n}");
            let one = BigRational::one();
            assert_eq!(preimage_poly(n, &one).unwrap(), power_matrix(n + 1).u);
        }
        let third = BigRational::new(1.into(), 3.into());
        let pre = preimage_poly(4, &third).unwrap();
        assert_eq!(pre.degree(), Some(4));
        assert_eq!(SturmChain::new(&pre).unwrap().total_count(), 4);
        assert_eq!(
            preimage_poly(3, &BigRational::zero()),
            Err(Error::DegenerateTarget)
        );
    }

    #[test]
    fn evaluation_matches_matrix_power() {
        let alpha = BigRational::new(41.into(), 18.into());
        for n in [1usize, 2, 5, 9] {
            let symbolic = power_matrix(n).eval_at(&alpha);
            assert_eq!(symbolic, b_a_inverse(&alpha).pow(n as i64));
        }
    }

    #[test]
    fn continued_fraction_step() {
        // u_{n+1}/l_{n+1} = 1/(α + 1/(u_n/l_n − 1)), cleared:
        // u_{n+1}·(α(u_n − l_n) + l_n) = l_{n+1}·(u_n − l_n)
        let x = IntPoly::x();
        let pms = power_matrices(11);
        for n in 0..10 {
            let (cur, next) = (&pms[n], &pms[n + 1]);
            let diff = &cur.u - &cur.l;
            let lhs = &next.u * &(&(&x * &diff) + &cur.l);
            let rhs = &next.l * &diff;
            assert_eq!(lhs, rhs, "n = {}", n + 1);
        }
    }
}
