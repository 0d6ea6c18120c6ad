use std::sync::Arc;

use proptest::prelude::*;

use gradecheck::format::{emit_algebra, emit_grading, emit_pair, parse_algebra, parse_grading, FormatError};
use gradecheck_core::algebra::Algebra;
use gradecheck_core::composition::split_hurwitz;
use gradecheck_core::constructions::catalog;
use gradecheck_core::field::{Rational, SVec, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=5, -3i64..=3).prop_map(|(n, d, im)| Scalar::new(Rational::new(n, d).unwrap(), Rational::from_int(im)))
}

fn table(n: usize) -> impl Strategy<Value = Vec<SVec>> {
    let entry = prop::collection::vec((0..n, scalar()), 0..3).prop_map(SVec::from_terms);
    prop::collection::vec(entry, n * n)
}

fn algebra() -> impl Strategy<Value = Algebra> {
    (1usize..=4).prop_flat_map(|n| {
        table(n).prop_map(move |t| {
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            Algebra::new("random", labels, t, None, None).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_tables_round_trip(a in algebra()) {
        let text = emit_algebra(&a);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(emit_algebra(&back), text);
    }
}

#[test]
fn hurwitz_algebras_round_trip_with_unit_and_involution() {
    for n in [1, 2, 4, 8] {
        let (a, _) = split_hurwitz(n).unwrap();
        let back = parse_algebra(&emit_algebra(&a)).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn catalog_pair_parses_back() {
    let e = catalog("ctc-6").unwrap();
    let (at, gt) = emit_pair(&e.grading);
    let a = Arc::new(parse_algebra(&at).unwrap());
    let g = parse_grading(&gt, a).unwrap();
    assert_eq!(emit_grading(&g).unwrap(), gt);
}

fn invalid(text: &str) -> (String, String) {
    match parse_algebra(text) {
        Err(FormatError::Invalid { at, msg }) => (at, msg),
        other => panic!("expected a format error, got {other:?}"),
    }
}

#[test]
fn malformed_algebras_are_rejected() {
    let (a, _) = split_hurwitz(2).unwrap();
    let good = emit_algebra(&a);

    let (_, msg) = invalid(&good.replacen("\"1\", \"0\"", "\"2/4\", \"0\"", 1));
    assert!(msg.contains("reduced"), "{msg}");

    let (at, _) = invalid(&good.replacen("[0, 0, 0,", "[0, 0, 9,", 1));
    assert!(at.contains("(0, 0, 9)"), "{at}");

    let (_, msg) = invalid(&good.replacen("\"dim\": 2", "\"dim\": 3", 1));
    assert!(msg.contains("basis") || msg.contains("dim"), "{msg}");

    assert!(matches!(parse_algebra("{"), Err(FormatError::Json(_))));
}

#[test]
fn broken_axioms_surface_as_algebra_errors() {
    // e0 e0 = 2 e0, so e0 is not a unit
    let text = r#"{"basis": ["e0"], "dim": 1, "name": "bad", "structure": [[0, 0, 0, "2", "0"]], "unit": 0}"#;
    match parse_algebra(text) {
        Err(FormatError::Algebra(_)) => {}
        other => panic!("expected an axiom failure, got {other:?}"),
    }
}
