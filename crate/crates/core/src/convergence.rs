//! The maximal roots `α_n` of the relation polynomials, their increase to
//! `4`, and exact algebraic checks standing in for the analytic lemmas.
//!
//! * clockwiseness of `c_n = u_n/l_n`: the Wronskian `u_n′l_n − u_n l_n′` has
//!   no real root and is negative at `0`;
//! * winding number `n`: every tested target `t ≠ 0` has exactly `n` real
//!   preimages under `c_n`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{b_a_inverse, rotation_number, Mat2, ProjPoint};
use crate::poly::IntPoly;
use crate::relation::{
    alternating, power_matrix, preimage_from, relation_poly, wronskian_of, PolyMat2,
};
use crate::roots::{isolate_with, refine_with, Bound, IsolatingInterval, SturmChain};
use crate::scalar::{rational_to_string, Sign};

/// Significant digits in decimal approximations.
const APPROX_DIGITS: usize = 20;
/// Halvings of the width tried before two root intervals are declared
/// inseparable.
const MAX_EXTRA_HALVINGS: u32 = 256;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `10^-k`
pub fn decimal_width(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaEntry {
    pub n: usize,
    pub interval: IsolatingInterval,
    pub approx: String,
    /// The root itself when it is rational.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_rational"
    )]
    pub exact: Option<BigRational>,
}

fn opt_rational<S: serde::Serializer>(
    q: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(&rational_to_string(q)),
        None => s.serialize_none(),
    }
}

fn max_root_of(chain: &SturmChain, width: &BigRational) -> Result<IsolatingInterval> {
    let last = isolate_with(chain).pop().ok_or(Error::NoRealRoot)?;
    Ok(refine_with(chain, &last, width))
}

fn entry(n: usize, iv: IsolatingInterval) -> AlphaEntry {
    AlphaEntry {
        n,
        approx: iv.approx(APPROX_DIGITS),
        exact: iv.exact.clone(),
        interval: iv,
    }
}

/// No real root in `[4, ∞)`.
fn below_four(chain: &SturmChain) -> bool {
    let four = int(4);
    chain.squarefree_poly().sign_at(&four) != Sign::Zero
        && chain.count_roots(&Bound::Finite(four), &Bound::PosInf) == 0
}

/// `α_1, …, α_N`, each isolated to width at most `width`, certified strictly
/// increasing and below `4`.
pub fn alpha_sequence(n_max: usize, width: &BigRational) -> Result<Vec<AlphaEntry>> {
    assert!(n_max >= 1, "the sequence starts at n = 1");
    let chains: Vec<SturmChain> = (1..=n_max)
        .into_par_iter()
        .map(|n| SturmChain::new(&relation_poly(n)))
        .collect::<Result<_>>()?;
    let mut intervals: Vec<IsolatingInterval> = chains
        .par_iter()
        .map(|c| max_root_of(c, width))
        .collect::<Result<_>>()?;
    for (i, c) in chains.iter().enumerate() {
        if !below_four(c) {
            return Err(Error::InternalInconsistency(format!(
                "p_{} has a root at or above 4",
                i + 1
            )));
        }
    }
    for i in 0..intervals.len().saturating_sub(1) {
        let mut w = width.clone();
        let mut halvings = 0;
        while intervals[i].hi >= intervals[i + 1].lo {
            if halvings == MAX_EXTRA_HALVINGS {
                return Err(Error::PrecisionExhausted(format!(
                    "alpha_{} and alpha_{} not separated",
                    i + 1,
                    i + 2
                )));
            }
            w /= int(2);
            halvings += 1;
            intervals[i] = refine_with(&chains[i], &intervals[i], &w);
            intervals[i + 1] = refine_with(&chains[i + 1], &intervals[i + 1], &w);
        }
    }
    Ok(intervals
        .into_iter()
        .enumerate()
        .map(|(i, iv)| entry(i + 1, iv))
        .collect())
}

/// Rational upper bound `4 − lo` on `4 − α_n` (exact when `α_n` is rational).
pub fn gap_to_four(n: usize, width: &BigRational) -> Result<BigRational> {
    let chain = SturmChain::new(&relation_poly(n))?;
    let iv = max_root_of(&chain, width)?;
    Ok(int(4) - iv.exact.unwrap_or(iv.lo))
}

/// Least `n ≤ n_cap` with `gap_to_four(n) < ε`; `None` is inconclusive.
pub fn find_n_for_epsilon(eps: &BigRational, n_cap: usize) -> Result<Option<usize>> {
    let default = decimal_width(12);
    let quarter = eps / int(4);
    let width = if quarter < default { quarter } else { default };
    for n in 1..=n_cap {
        if &gap_to_four(n, &width)? < eps {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `(B_4 A⁻¹)ⁿ = (−1)ⁿ [[1 − 2n, n], [−4n, 1 + 2n]]`
pub fn b4_closed_form(n: usize) -> Mat2<BigRational> {
    let s = BigRational::from_integer(alternating(n));
    let n = int(n as i64);
    Mat2::try_new(
        &s * (int(1) - int(2) * &n),
        &s * &n,
        &s * (-int(4) * &n),
        &s * (int(1) + int(2) * &n),
    )
    .expect("closed form has determinant one")
}

/// `(B_4 A⁻¹)ⁿ(0) = n/(2n + 1)`, computed by an exact matrix power and checked
/// against the closed form.
pub fn b4_orbit_value(n: usize) -> Result<BigRational> {
    let power = b_a_inverse(&int(4)).pow(n as i64);
    if power != b4_closed_form(n) {
        return Err(Error::InternalInconsistency(format!(
            "(B_4 A^-1)^{n} differs from its closed form"
        )));
    }
    let value = match power.apply(&ProjPoint::zero()) {
        ProjPoint::Finite(v) => v,
        ProjPoint::Infinity => {
            return Err(Error::InternalInconsistency(format!(
                "(B_4 A^-1)^{n}(0) is infinite"
            )))
        }
    };
    let expected = BigRational::new(BigInt::from(n), BigInt::from(2 * n + 1));
    if value != expected {
        return Err(Error::InternalInconsistency(format!(
            "(B_4 A^-1)^{n}(0) = {value}, expected {expected}"
        )));
    }
    Ok(value)
}

/// True iff `u_n − t·l_n` has exactly `n` distinct real roots.
pub fn winding_count_check(n: usize, t: &BigRational) -> Result<bool> {
    winding_with(&power_matrix(n), n, t)
}

fn winding_with(pm: &PolyMat2, n: usize, t: &BigRational) -> Result<bool> {
    let pre = preimage_from(pm, t)?;
    Ok(SturmChain::new(&pre)?.total_count() == n)
}

/// True iff `u′l − ul′` has no real root and is negative at `0`, so `u/l` is
/// strictly decreasing wherever it is finite.
pub fn clockwise_pair(u: &IntPoly, l: &IntPoly) -> bool {
    let w = wronskian_of(u, l);
    match SturmChain::new(&w) {
        Ok(chain) => chain.total_count() == 0 && w.sign_at(&BigRational::zero()) == Sign::Negative,
        Err(_) => false,
    }
}

pub fn clockwise_check(n: usize) -> bool {
    let pm = power_matrix(n);
    clockwise_pair(&pm.u, &pm.l)
}

/// Winding targets used by [`certify`].
pub fn default_targets() -> Vec<BigRational> {
    vec![
        BigRational::new(1.into(), 2.into()),
        BigRational::new(1.into(), 3.into()),
        int(2),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct WindingResult {
    #[serde(serialize_with = "rational_text")]
    pub t: BigRational,
    pub ok: bool,
}

fn rational_text<S: serde::Serializer>(
    q: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&rational_to_string(q))
}

/// Per-`n` certificate suite.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub n: usize,
    /// Monic of degree `n` with `n` distinct real roots.
    pub distinct_real_roots: bool,
    pub squarefree: bool,
    /// All real roots in `(0, 4)`.
    pub bounds: bool,
    pub clockwise: bool,
    pub winding: Vec<WindingResult>,
    /// Exact matrix powers at the endpoints of each root interval bracket `1/2`.
    pub orbit_consistency: bool,
    pub timing_ms: u128,
}

impl Certificate {
    pub fn all_ok(&self) -> bool {
        self.distinct_real_roots
            && self.squarefree
            && self.bounds
            && self.clockwise
            && self.orbit_consistency
            && self.winding.iter().all(|w| w.ok)
    }
}

/// `2u − l` at `x` from the exact matrix `(B_x A⁻¹)ⁿ`, independent of the
/// polynomial pipeline.
fn half_offset(n: usize, x: &BigRational) -> Sign {
    let m = b_a_inverse(x).pow(n as i64);
    let [_, u, _, l] = m.entries();
    let v: BigRational = int(2) * u - l;
    if v.is_zero() {
        Sign::Zero
    } else if v.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Every root interval of `p_n`, refined to `width`, has endpoints where
/// `(B_x A⁻¹)ⁿ(0) − 1/2` changes sign (or an exact root with value `1/2`).
pub fn orbit_consistency(n: usize, width: &BigRational) -> Result<bool> {
    let chain = SturmChain::new(&relation_poly(n))?;
    for iv in isolate_with(&chain) {
        let iv = refine_with(&chain, &iv, width);
        let ok = match &iv.exact {
            Some(r) => half_offset(n, r) == Sign::Zero,
            None => {
                let (a, b) = (half_offset(n, &iv.lo), half_offset(n, &iv.hi));
                a != Sign::Zero && b != Sign::Zero && a != b
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn certify_one(n: usize, targets: &[BigRational]) -> Result<Certificate> {
    let start = Instant::now();
    let pm = power_matrix(n);
    let p = relation_poly(n);
    let chain = SturmChain::new(&p)?;
    let distinct_real_roots = p.is_monic() && p.degree() == Some(n) && chain.total_count() == n;
    let squarefree = p.gcd(&p.derivative()) == IntPoly::one();
    let zero = BigRational::zero();
    let bounds = chain.count_roots(&Bound::NegInf, &Bound::Finite(zero)) == 0 && below_four(&chain);
    let clockwise = clockwise_pair(&pm.u, &pm.l);
    let winding = targets
        .iter()
        .map(|t| {
            Ok(WindingResult {
                t: t.clone(),
                ok: winding_with(&pm, n, t)?,
            })
        })
        .collect::<Result<_>>()?;
    let orbit_consistency = orbit_consistency(n, &decimal_width(20))?;
    Ok(Certificate {
        n,
        distinct_real_roots,
        squarefree,
        bounds,
        clockwise,
        winding,
        orbit_consistency,
        timing_ms: start.elapsed().as_millis(),
    })
}

/// Certificates for `n = 1..=n_max`, in ascending `n`.
pub fn certify(n_max: usize, targets: &[BigRational]) -> Result<Vec<Certificate>> {
    (1..=n_max)
        .into_par_iter()
        .map(|n| certify_one(n, targets))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RotationSample {
    #[serde(serialize_with = "rational_text")]
    pub alpha: BigRational,
    #[serde(rename = "approx:rotation")]
    pub rotation: f64,
    /// Continued-fraction terms of the float, up to the first tiny remainder.
    pub cf_terms: Vec<u64>,
    /// Smallest-denominator convergent within tolerance, if any.
    pub convergent: Option<(u64, u64)>,
    pub rational_looking: bool,
}

const CF_MAX_TERMS: usize = 16;
const CF_MAX_DEN: u64 = 1000;
const CF_TOL: f64 = 1e-12;

/// Continued-fraction heuristic on a float in `[0, 1)`.
pub fn rationality_heuristic(x: f64) -> (Vec<u64>, Option<(u64, u64)>) {
    let mut terms = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut rem = x;
    let mut found = None;
    for _ in 0..CF_MAX_TERMS {
        let a = rem.floor();
        if !(0.0..1e12).contains(&a) {
            break;
        }
        let a = a as u64;
        terms.push(a);
        let (p2, q2) = (
            a.saturating_mul(p1).saturating_add(p0),
            a.saturating_mul(q1).saturating_add(q0),
        );
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if q1 > CF_MAX_DEN {
            break;
        }
        if (x - p1 as f64 / q1 as f64).abs() < CF_TOL {
            found = Some((p1, q1));
            break;
        }
        let frac = rem - rem.floor();
        if frac < CF_TOL {
            break;
        }
        rem = 1.0 / frac;
    }
    (terms, found)
}

/// Rotation numbers at `samples` evenly spaced `α ∈ [lo, hi)`. Informational.
pub fn rotation_density_scan(
    lo: &BigRational,
    hi: &BigRational,
    samples: usize,
) -> Result<Vec<RotationSample>> {
    if !(&int(3) <= lo && lo < hi && hi <= &int(4)) {
        return Err(Error::NotElliptic(format!(
            "scan range [{}, {}] must satisfy 3 <= lo < hi <= 4",
            rational_to_string(lo),
            rational_to_string(hi)
        )));
    }
    (0..samples)
        .map(|i| {
            let alpha = lo + (hi - lo) * BigRational::new(BigInt::from(i), BigInt::from(samples));
            let rotation = rotation_number(&alpha)?;
            let (cf_terms, convergent) = rationality_heuristic(rotation);
            Ok(RotationSample {
                alpha,
                rotation,
                cf_terms,
                rational_looking: convergent.is_some(),
                convergent,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ExactField, QuadRational};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_alphas() {
        let seq = alpha_sequence(3, &decimal_width(12)).unwrap();
        assert_eq!(seq[0].exact, Some(int(3)));
        let golden = QuadRational::parse("5/2+1/2*sqrt(5)").unwrap();
        let iv = &seq[1].interval;
        let lo = QuadRational::rational(iv.lo.clone());
        let hi = QuadRational::rational(iv.hi.clone());
        assert_eq!((golden.clone() - lo).sign(), Sign::Positive);
        assert_eq!((hi - golden).sign(), Sign::Positive);
        assert!(seq[1].approx.starts_with("3.6180339887"));
        assert!(seq[1].interval.hi < seq[2].interval.lo);
    }

    #[test]
    fn gaps() {
        let w = decimal_width(12);
        assert_eq!(gap_to_four(1, &w).unwrap(), int(1));
        let g2 = gap_to_four(2, &w).unwrap();
        // (3 − √5)/2 ≈ 0.381966011250
        assert!(q(381_966_011_250, 1_000_000_000_000) < g2);
        assert!(g2 < q(381_966_011_252, 1_000_000_000_000));
        let gaps: Vec<_> = (1..=8).map(|n| gap_to_four(n, &w).unwrap()).collect();
        assert!(gaps.windows(2).all(|p| p[1] <= p[0]));
    }

    #[test]
    fn epsilon_search() {
        assert_eq!(find_n_for_epsilon(&q(1, 2), 10).unwrap(), Some(2));
        assert_eq!(find_n_for_epsilon(&int(2), 10).unwrap(), Some(1));
        assert_eq!(find_n_for_epsilon(&q(1, 1_000_000), 5).unwrap(), None);
    }

    #[test]
    fn b4_values() {
        assert_eq!(b4_orbit_value(0).unwrap(), int(0));
        assert_eq!(b4_orbit_value(1).unwrap(), q(1, 3));
        let v = b4_orbit_value(200).unwrap();
        assert_eq!(v, q(200, 401));
        assert!(v.is_positive() && v < q(1, 2));
    }

    #[test]
    fn winding_examples() {
        assert!(winding_count_check(3, &q(1, 2)).unwrap());
        assert!(winding_count_check(5, &q(1, 3)).unwrap());
        assert!(winding_count_check(4, &int(2)).unwrap());
        assert_eq!(
            winding_count_check(4, &int(0)).unwrap_err(),
            Error::DegenerateTarget
        );
    }

    #[test]
    fn clockwise_examples() {
        for n in 1..=10 {
            assert!(clockwise_check(n), "n = {n}");
        }
        let pm = power_matrix(1);
        let perturbed = &pm.l + &IntPoly::from_i64(&[0, 0, 1]);
        assert!(!clockwise_pair(&pm.u, &perturbed));
    }

    #[test]
    fn certificates_small() {
        for c in certify(6, &default_targets()).unwrap() {
            assert!(c.all_ok(), "{c:?}");
        }
    }

    #[test]
    fn rotation_scan() {
        let scan = rotation_density_scan(&int(3), &int(4), 2).unwrap();
        assert!((scan[0].rotation - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(scan[0].convergent, Some((2, 3)));
        let x = (-0.75f64).acos() / std::f64::consts::PI;
        assert_eq!(scan[1].alpha, q(7, 2));
        assert!((scan[1].rotation - x).abs() < 1e-12);
        assert!(!scan[1].rational_looking);
        assert!(rotation_density_scan(&int(3), &int(4), 0)
            .unwrap()
            .is_empty());
        assert!(rotation_density_scan(&int(2), &int(4), 3).is_err());
    }
}
