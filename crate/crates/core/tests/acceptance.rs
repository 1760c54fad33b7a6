use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use relnum::convergence::{
    alpha_sequence, b4_closed_form, b4_orbit_value, clockwise_check, decimal_width,
    winding_count_check,
};
use relnum::farey::{check_certificate, explore_ball, find_cycle, find_cycle_incremental, Edge};
use relnum::matrix::{b_a_inverse, evaluate_word, rotation_number};
use relnum::orbit::{orbit_bfs, verify_table, verify_witness, Basepoint, SearchBudget};
use relnum::relation::relation_poly;
use relnum::roots::{isolate_all, refine, Bound};
use relnum::scalar::ExactField;
use relnum::{
    Error, IntPoly, Mat2, ProjPoint, Quad, QuadRational, Rat, ReducedWord, Scalar, Sign, SturmChain,
};

fn q(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn word(s: &str) -> ReducedWord {
    s.parse().unwrap()
}

fn polynomial_identities() {
    assert_eq!(relation_poly(1), IntPoly::from_i64(&[-3, 1]));
    assert_eq!(relation_poly(2), IntPoly::from_i64(&[5, -5, 1]));
}

fn root_ladder() {
    let first = &alpha_sequence(1, &decimal_width(12)).unwrap()[0];
    assert_eq!(first.exact, Some(q(3, 1)));
    assert_eq!(relation_poly(1).sign_at(&q(3, 1)), Sign::Zero);

    let p2 = relation_poly(2);
    let iso = isolate_all(&p2).unwrap();
    let top = iso.intervals.last().unwrap();
    let iv = refine(&p2, top, &decimal_width(12)).unwrap();
    assert!(iv.width() <= decimal_width(12));

    let target = QuadRational::new(q(5, 2), q(1, 2), 5).unwrap();
    let lo = Quad::from_rational(iv.lo.clone());
    let hi = Quad::from_rational(iv.hi.clone());
    assert_eq!((target.clone() - lo).sign(), Sign::Positive);
    assert_ne!((hi - target.clone()).sign(), Sign::Negative);
    assert!(((5.0 + 5f64.sqrt()) / 2.0 - target.approx_f64()).abs() < 1e-15);
}

fn sequence_to_25() {
    for n in 1..=25 {
        let p = relation_poly(n);
        assert_eq!(p.degree(), Some(n));
        assert!(p.is_monic());
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.total_count(), n, "n = {n}");
        assert_eq!(chain.count_in(&q(0, 1), &q(4, 1)), n, "n = {n}");
        assert_ne!(p.sign_at(&q(4, 1)), Sign::Zero);
        assert_eq!(p.gcd(&p.derivative()).degree(), Some(0), "n = {n}");
    }
    let alphas = alpha_sequence(25, &decimal_width(12)).unwrap();
    assert_eq!(alphas.len(), 25);
    for pair in alphas.windows(2) {
        assert!(
            pair[0].interval.hi < pair[1].interval.lo,
            "n = {}",
            pair[0].n
        );
    }
    assert!(alphas[0].interval.lo > q(0, 1));
    assert!(alphas[24].interval.hi < q(4, 1));
}

fn table_replay() {
    let report = verify_table().unwrap();
    assert_eq!((report.passed, report.total), (14, 14));
    for row in &report.rows {
        assert_eq!(row.basepoint, Basepoint::Zero);
        assert!(row.pass, "{}", row.alpha);
    }
}

fn closed_form_at_four() {
    let m = b_a_inverse(&q(4, 1));
    let mut power = Mat2::identity();
    for n in 1..=200usize {
        power = power.mul(&m);
        assert_eq!(power, b4_closed_form(n), "n = {n}");
        let v = b4_orbit_value(n).unwrap();
        assert_eq!(v, q(n as i64, 2 * n as i64 + 1));
        assert!(v > q(0, 1) && v < q(1, 2));
    }
}

fn orbit_witnesses() {
    for a in ["2/3", "1/3", "2/5", "3/7", "41/18", "2+sqrt(2)"] {
        let alpha = Scalar::parse(a).unwrap();
        let w = orbit_bfs(&alpha, SearchBudget::default()).unwrap();
        let w = w.unwrap_or_else(|| panic!("no witness for {a}"));
        assert_eq!(w.alpha, alpha);
        assert!(verify_witness(&w), "{a}");
        assert!(verify_witness(&w.normalized()), "{a}");
    }
    for a in ["4", "9/2", "5"] {
        let alpha = Scalar::parse(a).unwrap();
        let found = orbit_bfs(&alpha, SearchBudget::default()).unwrap();
        assert!(found.is_none(), "witness reported for free number {a}");
    }
}

fn farey_cycles() {
    let one = q(1, 1);
    let (cert, _) = find_cycle_incremental(&one, 6, 4)
        .unwrap()
        .expect("cycle at 1");
    assert!(check_certificate(&cert).unwrap());
    let edges = |words: &[ReducedWord]| -> HashSet<Edge<Rat>> {
        words
            .iter()
            .map(|w| Edge::of_matrix(&evaluate_word(w, &one)))
            .collect()
    };
    let expected = edges(&[word("1"), word("a"), word("aB")]);
    assert_eq!(edges(&cert.edge_words), expected);

    let (half, _) = find_cycle_incremental(&q(1, 2), 6, 4)
        .unwrap()
        .expect("cycle at 1/2");
    assert!(check_certificate(&half).unwrap());

    assert!(find_cycle(&explore_ball(&q(4, 1), 4, 3).unwrap()).is_none());
}

fn analytic_lemmas() {
    let targets = [q(1, 2), q(1, 3), q(2, 1)];
    for n in 1..=10 {
        assert!(clockwise_check(n), "n = {n}");
        for t in &targets {
            assert!(winding_count_check(n, t).unwrap(), "n = {n}, t = {t}");
        }
    }
}

fn rotation_numbers() {
    assert!((rotation_number(&q(3, 1)).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert!((rotation_number(&q(2, 1)).unwrap() - 0.5).abs() < 1e-12);
    assert!(matches!(
        rotation_number(&q(4, 1)),
        Err(Error::NotElliptic(_))
    ));
}

fn rational() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn small_word() -> impl Strategy<Value = ReducedWord> {
    proptest::collection::vec(
        prop_oneof![Just("A"), Just("a"), Just("B"), Just("b")],
        0..8,
    )
    .prop_map(|letters| letters.concat().parse().unwrap())
}

/// A polynomial with a known real root set: linear rational factors with
/// multiplicities, optionally times `x² + c`, scaled by a nonzero constant.
fn factored_poly() -> impl Strategy<Value = (IntPoly, BTreeSet<Rat>)> {
    let factor = ((-12i64..=12, 1i64..=4), 1usize..=3);
    (
        proptest::collection::vec(factor, 0..=6),
        proptest::option::of(1i64..=9),
        prop_oneof![-3i64..=-1, 1i64..=3],
    )
        .prop_map(|(factors, quad, lead)| {
            let mut p = IntPoly::from_i64(&[lead]);
            let mut roots = BTreeSet::new();
            let mut degree = 0;
            if let Some(c) = quad {
                p = &p * &IntPoly::from_i64(&[c, 0, 1]);
                degree += 2;
            }
            for ((num, den), mult) in factors {
                for _ in 0..mult {
                    if degree == 6 {
                        break;
                    }
                    p = &p * &IntPoly::from_i64(&[-num, den]);
                    roots.insert(q(num, den));
                    degree += 1;
                }
            }
            (p, roots)
        })
}

fn properties() {
    let runner = || {
        TestRunner::new(Config {
            cases: 1000,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let cases = AtomicUsize::new(0);

    runner()
        .run(&(small_word(), rational()), |(w, alpha)| {
            let m = evaluate_word(&w, &alpha);
            prop_assert_eq!(evaluate_word(&w.mirror(), &alpha), m.mirror());
            prop_assert_eq!(m.det(), q(1, 1));
            Ok(())
        })
        .unwrap();

    runner()
        .run(
            &(small_word(), small_word(), rational(), rational()),
            |(u, v, alpha, x)| {
                let x = ProjPoint::Finite(x);
                let uv = evaluate_word(&u.concat(&v), &alpha);
                let mu = evaluate_word(&u, &alpha);
                let mv = evaluate_word(&v, &alpha);
                prop_assert_eq!(uv.apply(&x), mu.apply(&mv.apply(&x)));
                prop_assert_eq!(
                    uv.apply(&ProjPoint::Infinity),
                    mu.apply(&mv.apply(&ProjPoint::Infinity))
                );
                Ok(())
            },
        )
        .unwrap();

    runner()
        .run(
            &(factored_poly(), rational(), rational()),
            |((p, roots), a, b)| {
                cases.fetch_add(1, Ordering::Relaxed);
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let chain = SturmChain::new(&p).unwrap();
                prop_assert_eq!(chain.total_count(), roots.len());
                let expected = roots.iter().filter(|r| **r > lo && **r <= hi).count();
                prop_assert_eq!(
                    chain.count_roots(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())),
                    expected
                );
                let above = roots.iter().filter(|r| **r > hi).count();
                prop_assert_eq!(chain.count_roots(&Bound::Finite(hi), &Bound::PosInf), above);
                let iso = isolate_all(&p).unwrap();
                prop_assert_eq!(iso.intervals.len(), roots.len());
                for (iv, r) in iso.intervals.iter().zip(&roots) {
                    prop_assert!(iv.contains(r));
                }
                Ok(())
            },
        )
        .unwrap();
    let cases = cases.into_inner();
    assert!(cases >= 1000, "{cases} cases");
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("polynomial identities", polynomial_identities),
        ("root ladder", root_ladder),
        ("sequence to 25", sequence_to_25),
        ("table replay", table_replay),
        ("closed form at four", closed_form_at_four),
        ("orbit witnesses", orbit_witnesses),
        ("farey cycles", farey_cycles),
        ("analytic lemmas", analytic_lemmas),
        ("rotation numbers", rotation_numbers),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        let ms = start.elapsed().as_millis();
        println!(
            "{} criterion {:>2} {name} ({ms} ms)",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
        if !ok {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
