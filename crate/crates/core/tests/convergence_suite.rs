use relnum::convergence::{alpha_sequence, certify, decimal_width, default_targets};

#[test]
fn alphas_increase_below_four_up_to_25() {
    let seq = alpha_sequence(25, &decimal_width(12)).unwrap();
    assert_eq!(seq.len(), 25);
    for pair in seq.windows(2) {
        assert!(
            pair[0].interval.hi < pair[1].interval.lo,
            "n = {}",
            pair[0].n
        );
    }
}

#[test]
fn certificates_up_to_25() {
    let certs = certify(25, &default_targets()).unwrap();
    for c in &certs {
        assert!(c.all_ok(), "{c:?}");
    }
}
