use relnum::orbit::{orbit_bfs, verify_witness, Basepoint, SearchBudget};
use relnum::word::Syllable;
use relnum::{Generator, ReducedWord, Scalar};

fn scalar(text: &str) -> Scalar {
    Scalar::parse(text).unwrap()
}

#[test]
fn canonical_witnesses_are_stable() {
    let expected = [
        ("2/3", "B", Basepoint::Infinity, "3/2"),
        ("1/3", "bA", Basepoint::Zero, "3/2"),
        ("2/5", "B", Basepoint::Infinity, "5/2"),
        ("3/7", "bA^3", Basepoint::Zero, "-21/2"),
        ("41/18", "B^-2AbA", Basepoint::Zero, "45/2"),
        ("2+1*sqrt(2)", "BaB", Basepoint::Infinity, "1/2"),
    ];
    for (alpha, word, basepoint, value) in expected {
        let w = orbit_bfs(&scalar(alpha), SearchBudget::default())
            .unwrap()
            .unwrap_or_else(|| panic!("no witness for {alpha}"));
        assert_eq!(w.word, word.parse::<ReducedWord>().unwrap(), "{alpha}");
        assert_eq!(w.basepoint, basepoint, "{alpha}");
        assert_eq!(w.value, scalar(value), "{alpha}");
        assert!(verify_witness(&w), "{alpha}");
        let unit = w.normalized();
        assert!(unit.value_is_one_half() && verify_witness(&unit), "{alpha}");
    }
}

#[test]
fn small_budget_is_inconclusive() {
    let tight = SearchBudget {
        max_depth: 2,
        ..SearchBudget::default()
    };
    assert!(orbit_bfs(&scalar("41/18"), tight).unwrap().is_none());
}

#[test]
fn negative_alpha_mirrors_positive() {
    let pos = orbit_bfs(&scalar("3/7"), SearchBudget::default())
        .unwrap()
        .unwrap();
    let neg = orbit_bfs(&scalar("-3/7"), SearchBudget::default())
        .unwrap()
        .unwrap();
    assert_eq!(pos.depth, neg.depth);
    let b_inverted =
        ReducedWord::from_syllables(pos.word.syllables().iter().map(|s| match s.generator {
            Generator::B => Syllable::new(Generator::B, -s.exponent),
            Generator::A => *s,
        }));
    assert_eq!(neg.word, b_inverted);
    assert_eq!(neg.value, pos.value);
    assert!(verify_witness(&neg));
}
