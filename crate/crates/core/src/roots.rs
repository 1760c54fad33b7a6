//! Exact real-root counting and isolation by Sturm sequences and rational
//! bisection. Counts are taken on half-open intervals `(lo, hi]`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::scalar::{format_decimal, parse_rational, rational_to_string, Sign};

/// An endpoint for [`SturmChain::count_roots`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl From<BigRational> for Bound {
    fn from(q: BigRational) -> Bound {
        Bound::Finite(q)
    }
}

/// Sturm sequence of a nonzero polynomial.
///
/// `polys` is the raw chain `p, p′, −rem, …`, each remainder content-reduced
/// with its sign kept; its last element is an associate of `gcd(p, p′)`.
/// Counting uses the chain divided through by that gcd, which counts distinct
/// roots even when `p` has repeated factors.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
    reduced: Vec<IntPoly>,
    squarefree: bool,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<SturmChain> {
        if p.is_zero() {
            return Err(Error::ZeroPoly);
        }
        let mut polys = vec![p.clone()];
        let dp = p.derivative();
        if !dp.is_zero() {
            polys.push(dp);
        }
        while polys.len() >= 2 {
            let a = &polys[polys.len() - 2];
            let b = &polys[polys.len() - 1];
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^(δ+1)·rem, so this factor restores the sign of rem
            let lc_negative = b.leading_coeff().unwrap().is_negative();
            let next = if lc_negative && delta % 2 == 0 { r } else { -r };
            polys.push(next.content_reduce());
        }
        let last = polys.last().unwrap().content_reduce();
        let squarefree = last.degree() == Some(0);
        let reduced = if squarefree {
            polys.clone()
        } else {
            polys
                .iter()
                .map(|q| {
                    q.div_exact(&last)
                        .expect("chain elements are multiples of the gcd")
                })
                .collect()
        };
        Ok(SturmChain {
            polys,
            reduced,
            squarefree,
        })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    /// The polynomial with the same real roots, all simple.
    pub fn squarefree_poly(&self) -> &IntPoly {
        &self.reduced[0]
    }

    fn variations_by<F: Fn(&IntPoly) -> Sign>(&self, sign_of: F) -> usize {
        let mut count = 0;
        let mut prev = Sign::Zero;
        for q in &self.reduced {
            let s = sign_of(q);
            if s == Sign::Zero {
                continue;
            }
            if prev != Sign::Zero && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    fn variations(&self, at: &Bound) -> usize {
        match at {
            Bound::PosInf => self.variations_by(lead_sign),
            Bound::NegInf => self.variations_by(|q| {
                let s = lead_sign(q);
                if q.degree().unwrap_or(0) % 2 == 1 {
                    s.flip()
                } else {
                    s
                }
            }),
            Bound::Finite(x) => self.variations_by(|q| q.sign_at(x)),
        }
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.count_roots(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()))
    }

    /// Number of distinct real roots.
    pub fn total_count(&self) -> usize {
        self.count_roots(&Bound::NegInf, &Bound::PosInf)
    }
}

fn lead_sign(q: &IntPoly) -> Sign {
    q.leading_coeff().map_or(Sign::Zero, Sign::of_int)
}

/// `1 + max|a_i| / |a_n|`: every real root lies strictly inside `±bound`.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.leading_coeff().expect("nonzero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .take(p.coeffs().len() - 1)
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    BigRational::one() + BigRational::new(max, lc)
}

/// `(lo, hi]` containing exactly one root. `exact` is set when the root is
/// known as a rational, in which case it lies in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: Option<BigRational>,
}

impl IsolatingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// The exact root if known, else the midpoint.
    pub fn estimate(&self) -> BigRational {
        self.exact.clone().unwrap_or_else(|| self.midpoint())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn approx(&self, significant: usize) -> String {
        format_decimal(&self.estimate(), significant)
    }
}

impl fmt::Display for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}]",
            rational_to_string(&self.lo),
            rational_to_string(&self.hi)
        )
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: String,
    hi: String,
    approx: String,
}

impl Serialize for IsolatingInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: rational_to_string(&self.lo),
            hi: rational_to_string(&self.hi),
            approx: self.approx(20),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IsolatingInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = IntervalRepr::deserialize(d)?;
        let lo = parse_rational(&repr.lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&repr.hi).map_err(serde::de::Error::custom)?;
        if lo >= hi {
            return Err(serde::de::Error::custom("interval with lo >= hi"));
        }
        Ok(IsolatingInterval {
            lo,
            hi,
            exact: None,
        })
    }
}

/// Result of [`isolate_all`]; `squarefree` is false when repeated factors
/// were divided out first.
#[derive(Debug, Clone)]
pub struct Isolation {
    pub intervals: Vec<IsolatingInterval>,
    pub squarefree: bool,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// One interval per distinct real root, disjoint and ascending.
pub fn isolate_all(p: &IntPoly) -> Result<Isolation> {
    let chain = SturmChain::new(p)?;
    let intervals = isolate_with(&chain);
    Ok(Isolation {
        intervals,
        squarefree: chain.is_squarefree(),
    })
}

pub(crate) fn isolate_with(chain: &SturmChain) -> Vec<IsolatingInterval> {
    let sf = chain.squarefree_poly();
    let mut out = Vec::new();
    if sf.degree() == Some(0) {
        return out;
    }
    let bound = cauchy_bound(sf);
    let lo = -bound.clone();
    let total = chain.count_in(&lo, &bound);
    // left part pushed last so intervals come out ascending
    let mut stack = vec![(lo, bound, total)];
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => {
                let exact = (sf.sign_at(&hi) == Sign::Zero).then(|| hi.clone());
                out.push(IsolatingInterval { lo, hi, exact });
            }
            _ => {
                let mid = (&lo + &hi) * half();
                let left = chain.count_in(&lo, &mid);
                stack.push((mid.clone(), hi, count - left));
                stack.push((lo, mid, left));
            }
        }
    }
    out
}

/// Bisects `iv` down to width at most `width`. An interval already that
/// narrow is returned unchanged.
pub fn refine(
    p: &IntPoly,
    iv: &IsolatingInterval,
    width: &BigRational,
) -> Result<IsolatingInterval> {
    let chain = SturmChain::new(p)?;
    Ok(refine_with(&chain, iv, width))
}

pub(crate) fn refine_with(
    chain: &SturmChain,
    iv: &IsolatingInterval,
    width: &BigRational,
) -> IsolatingInterval {
    assert!(width.is_positive(), "refinement width must be positive");
    if &iv.width() <= width {
        return iv.clone();
    }
    if let Some(r) = &iv.exact {
        return collapse(chain, r, width, iv);
    }
    let sf = chain.squarefree_poly();
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let hi_sign = sf.sign_at(&hi);
    if hi_sign == Sign::Zero {
        return collapse(chain, &hi, width, iv);
    }
    while &hi - &lo > *width {
        let mid = (&lo + &hi) * half();
        let s = sf.sign_at(&mid);
        if s == Sign::Zero {
            return collapse(chain, &mid, width, iv);
        }
        // the root is simple and hi is not a root, so p keeps hi's sign on (root, hi]
        if s == hi_sign {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    IsolatingInterval {
        lo,
        hi,
        exact: None,
    }
}

/// `[r − w/2, r + w/2]`, shrunk further if needed to stay inside `iv`'s
/// neighbourhood of other roots.
fn collapse(
    chain: &SturmChain,
    r: &BigRational,
    width: &BigRational,
    iv: &IsolatingInterval,
) -> IsolatingInterval {
    let mut w = width.clone();
    loop {
        let lo = r - &w * half();
        let hi = r + &w * half();
        if chain.count_in(&lo, &hi) == 1 && (lo >= iv.lo || chain.count_in(&lo, &iv.lo) == 0) {
            return IsolatingInterval {
                lo,
                hi,
                exact: Some(r.clone()),
            };
        }
        w *= half();
    }
}

/// The largest real root, refined to `width`.
pub fn max_root(p: &IntPoly, width: &BigRational) -> Result<IsolatingInterval> {
    let chain = SturmChain::new(p)?;
    let last = isolate_with(&chain).pop().ok_or(Error::NoRealRoot)?;
    Ok(refine_with(&chain, &last, width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::relation_poly;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn linear_chain() {
        let chain = SturmChain::new(&p(&[-3, 1])).unwrap();
        assert_eq!(chain.polys(), &[p(&[-3, 1]), p(&[1])]);
        assert_eq!(chain.total_count(), 1);
    }

    #[test]
    fn zero_poly_rejected() {
        assert_eq!(
            SturmChain::new(&IntPoly::zero()).unwrap_err(),
            Error::ZeroPoly
        );
    }

    #[test]
    fn constant_chain() {
        let chain = SturmChain::new(&p(&[7])).unwrap();
        assert_eq!(chain.total_count(), 0);
        assert!(isolate_all(&p(&[7])).unwrap().intervals.is_empty());
    }

    #[test]
    fn counts() {
        let sq = SturmChain::new(&p(&[1, 0, 1])).unwrap();
        assert_eq!(sq.total_count(), 0);
        let p2 = SturmChain::new(&relation_poly(2)).unwrap();
        assert_eq!(p2.total_count(), 2);
        assert_eq!(p2.count_in(&int(3), &int(4)), 1);
        let p1 = SturmChain::new(&relation_poly(1)).unwrap();
        assert_eq!(p1.total_count(), 1);
        // half-open convention
        assert_eq!(p1.count_in(&int(2), &int(3)), 1);
        assert_eq!(p1.count_in(&int(3), &int(4)), 0);
    }

    #[test]
    fn relation_polys_have_n_real_roots() {
        for n in 1..=25 {
            let chain = SturmChain::new(&relation_poly(n)).unwrap();
            assert!(chain.is_squarefree(), "n = {n}");
            assert_eq!(chain.total_count(), n, "n = {n}");
        }
    }

    #[test]
    fn non_primitive_repeated_root() {
        let chain = SturmChain::new(&p(&[0, 0, -2])).unwrap();
        assert!(!chain.is_squarefree());
        assert_eq!(chain.total_count(), 1);
        assert_eq!(
            chain.count_in(
                &BigRational::from_integer((-1).into()),
                &BigRational::zero()
            ),
            1
        );
    }

    #[test]
    fn chain_ends_in_gcd_associate() {
        // (x − 1)²(x + 2)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let chain = SturmChain::new(&f).unwrap();
        assert!(!chain.is_squarefree());
        let last = chain.polys().last().unwrap();
        assert_eq!(last.primitive_part(), f.gcd(&f.derivative()));
        assert_eq!(chain.total_count(), 2);
        assert_eq!(chain.count_in(&int(0), &int(1)), 1);
        let iso = isolate_all(&f).unwrap();
        assert!(!iso.squarefree);
        assert_eq!(iso.intervals.len(), 2);
    }

    #[test]
    fn isolation_examples() {
        let iso = isolate_all(&relation_poly(2)).unwrap();
        assert!(iso.squarefree);
        assert_eq!(iso.intervals.len(), 2);
        let [a, b] = [&iso.intervals[0], &iso.intervals[1]];
        assert!(a.hi <= b.lo);
        // (5 − √5)/2 ≈ 1.382, (5 + √5)/2 ≈ 3.618
        let sf = relation_poly(2);
        let chain = SturmChain::new(&sf).unwrap();
        assert_eq!(chain.count_in(&a.lo, &a.hi), 1);
        assert_eq!(chain.count_in(&b.lo, &b.hi), 1);
        assert!(a.lo < q(1382, 1000) && q(1383, 1000) <= a.hi);
        assert!(b.lo < q(3618, 1000) && q(3619, 1000) <= b.hi);

        assert!(isolate_all(&p(&[1, 0, 1])).unwrap().intervals.is_empty());
        let one = isolate_all(&relation_poly(1)).unwrap().intervals;
        assert_eq!(one.len(), 1);
        assert!(one[0].contains(&int(3)));
    }

    #[test]
    fn refine_irrational() {
        let p2 = relation_poly(2);
        let w = q(1, 1_000_000_000_000);
        let iv = max_root(&p2, &w).unwrap();
        assert!(iv.width() <= w);
        assert!(iv.exact.is_none());
        assert_eq!(iv.approx(13), "3.61803398875");
        // bracket (5+√5)/2 via the sign change of p_2
        assert_ne!(p2.sign_at(&iv.lo), p2.sign_at(&iv.hi));
    }

    #[test]
    fn refine_exact_root() {
        let p1 = relation_poly(1);
        let w = q(1, 1000);
        let iv = max_root(&p1, &w).unwrap();
        assert_eq!(iv.exact, Some(int(3)));
        assert_eq!(iv.lo, int(3) - q(1, 2000));
        assert_eq!(iv.hi, int(3) + q(1, 2000));
        assert!(max_root(&p(&[1, 0, 1]), &w).unwrap_err() == Error::NoRealRoot);
    }

    #[test]
    fn midpoint_hit_during_refinement() {
        // (x − 1)(x − 5) on (0, 2]: the first midpoint is the root
        let f = &p(&[-1, 1]) * &p(&[-5, 1]);
        let iv = IsolatingInterval {
            lo: int(0),
            hi: int(2),
            exact: None,
        };
        let w = q(1, 1 << 20);
        let r = refine(&f, &iv, &w).unwrap();
        assert_eq!(r.exact, Some(int(1)));
        assert_eq!(r.width(), w);
        assert!(r.contains(&int(1)));
    }

    #[test]
    fn refine_is_idempotent_on_narrow_interval() {
        let p2 = relation_poly(2);
        let w = q(1, 1_000_000);
        let iv = max_root(&p2, &w).unwrap();
        assert_eq!(refine(&p2, &iv, &w).unwrap(), iv);
    }

    #[test]
    fn interval_json() {
        let iv = IsolatingInterval {
            lo: q(3, 1),
            hi: q(29, 8),
            exact: None,
        };
        let json = serde_json::to_string(&iv).unwrap();
        assert_eq!(json, r#"{"lo":"3","hi":"29/8","approx":"3.3125"}"#);
        let back: IsolatingInterval = serde_json::from_str(&json).unwrap();
        assert_eq!(back, iv);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        assert_eq!(cauchy_bound(&relation_poly(2)), int(6));
    }
}
