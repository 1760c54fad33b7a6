use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use relnum::matrix::{b_a_inverse, evaluate_word};
use relnum::orbit::{mirror_witness, verify_witness, Basepoint, Witness};
use relnum::relation::{power_matrix, preimage_poly, relation_poly};
use relnum::roots::{isolate_all, refine};
use relnum::scalar::ExactField;
use relnum::word::mirror_partner;
use relnum::{Mat2, ProjPoint, Quad, QuadRational, Rat, ReducedWord, Scalar, Sign, SturmChain};

fn q(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rat> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn quad() -> impl Strategy<Value = Quad> {
    (rational(), rational()).prop_map(|(a, b)| QuadRational::new(a, b, 2).unwrap())
}

fn word() -> impl Strategy<Value = ReducedWord> {
    proptest::collection::vec((prop_oneof![Just('A'), Just('B')], -3i64..=3), 0..6).prop_map(
        |syl| {
            syl.into_iter()
                .map(|(g, k)| {
                    let letter = if k < 0 { g.to_ascii_lowercase() } else { g };
                    letter.to_string().repeat(k.unsigned_abs() as usize)
                })
                .collect::<String>()
                .parse()
                .unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn word_text_round_trip(w in word()) {
        let back: ReducedWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn inverse_evaluates_to_identity(w in word(), alpha in rational()) {
        prop_assert!(w.concat(&w.inverse()).is_identity());
        let m = evaluate_word(&w, &alpha).mul(&evaluate_word(&w.inverse(), &alpha));
        prop_assert_eq!(m, Mat2::identity());
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word(), v in word(), alpha in quad()) {
        let lhs = evaluate_word(&u.concat(&v), &alpha);
        let rhs = evaluate_word(&u, &alpha).mul(&evaluate_word(&v, &alpha));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mirror_conjugates_action(w in word(), alpha in rational(), x in rational()) {
        let m = evaluate_word(&w, &alpha);
        let image = evaluate_word(&w.mirror(), &alpha).apply(&ProjPoint::Finite(-x.clone()));
        prop_assert_eq!(image, m.apply(&ProjPoint::Finite(x)).neg());
    }

    #[test]
    fn mirror_partner_lands_on_the_shifted_reflection(w in word(), alpha in rational()) {
        let x = evaluate_word(&w, &alpha).apply(&ProjPoint::zero());
        let y = evaluate_word(&mirror_partner(&w), &alpha).apply(&ProjPoint::zero());
        let expected = match x {
            ProjPoint::Finite(v) => ProjPoint::Finite(Rat::one() - v),
            ProjPoint::Infinity => ProjPoint::Infinity,
        };
        prop_assert_eq!(y, expected);
    }

    #[test]
    fn quadratic_field_axioms(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if !b.is_zero() {
            prop_assert_eq!((a.clone() / b.clone()) * b.clone(), a.clone());
        }
        prop_assert_eq!((a.clone() - b.clone()).sign(), (b - a).sign().flip());
    }

    #[test]
    fn quadratic_sign_matches_float(a in quad()) {
        let f = a.approx_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(a.sign() == Sign::Positive, f > 0.0);
        }
    }

    #[test]
    fn scalar_text_round_trip(a in quad()) {
        let s = Scalar::from(a);
        let back = Scalar::parse(&s.to_string()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn mirrored_witness_verifies(w in word(), alpha in nonzero_rational()) {
        let value = evaluate_word(&w, &alpha).apply(&ProjPoint::zero());
        let value = match value {
            ProjPoint::Finite(v) => v,
            ProjPoint::Infinity => return Ok(()),
        };
        let doubled = &value * Rat::from_integer(2.into());
        if !doubled.is_integer() || doubled.to_integer() % 2 == BigInt::zero() {
            return Ok(());
        }
        let witness = Witness {
            alpha: Scalar::from(alpha),
            basepoint: Basepoint::Zero,
            word: w.clone(),
            value: Scalar::from(value),
            half_index: (doubled.to_integer() - 1) / 2,
            depth: w.generator_len(),
        };
        prop_assert!(verify_witness(&witness));
        let unit = witness.normalized();
        prop_assert!(unit.value_is_one_half());
        prop_assert!(verify_witness(&unit));
        prop_assert!(verify_witness(&mirror_witness(&unit)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn relation_poly_matches_matrix_power(n in 1usize..12, alpha in rational()) {
        let numeric = b_a_inverse(&alpha).pow(n as i64);
        prop_assert_eq!(power_matrix(n).eval_at(&alpha), numeric.clone());
        let [_, u, _, l] = numeric.entries();
        let two_u_minus_l = Rat::from_integer(2.into()) * u - l;
        let expected = if n % 2 == 1 { two_u_minus_l } else { -two_u_minus_l };
        prop_assert_eq!(relation_poly(n).eval(&alpha), expected);
    }

    #[test]
    fn preimage_counts_are_n(n in 1usize..9, t in nonzero_rational()) {
        let chain = SturmChain::new(&preimage_poly(n, &t).unwrap()).unwrap();
        prop_assert_eq!(chain.total_count(), n);
    }

    #[test]
    fn refinement_keeps_the_root(n in 1usize..10, k in 3u32..30) {
        let p = relation_poly(n);
        let width = q(1, 1) / Rat::from_integer(BigInt::from(2).pow(k));
        for iv in isolate_all(&p).unwrap().intervals {
            let fine = refine(&p, &iv, &width).unwrap();
            prop_assert!(fine.width() <= width);
            prop_assert!(fine.lo >= iv.lo && fine.hi <= iv.hi);
            let chain = SturmChain::new(&p).unwrap();
            prop_assert_eq!(chain.count_in(&fine.lo, &fine.hi), 1);
        }
    }
}
