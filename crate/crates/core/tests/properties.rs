use proptest::prelude::*;

use sheffer_core::iterated::{consistency_report, CompositionOrder, IteratedSpec};
use sheffer_core::rational::int;
use sheffer_core::sheffer::{biorthogonality_check, sequence_from_gf, Normalization};
use sheffer_core::specparse::{parse, parse_and_evaluate, Bindings};
use sheffer_core::{ReferenceSequence, ShefferPair};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parser_is_total(input in "[ -~]{0,256}") {
        match parse(&input) {
            Ok(expr) => {
                // a successful parse prints back to something that parses to the same tree
                let again = parse(&expr.to_string()).unwrap();
                prop_assert_eq!(again, expr);
            }
            Err(e) => prop_assert!(e.offset <= input.len()),
        }
    }

    #[test]
    fn evaluation_is_total(input in "[t1-3+*/^()a-]{0,40}") {
        let mut b = Bindings::new();
        b.insert("a".into(), int(2));
        let _ = parse_and_evaluate(&input, &b, 5);
    }
}

#[test]
fn textual_pair_end_to_end() {
    let b = Bindings::new();
    let g = parse_and_evaluate("1/(1-t)^2", &b, 8).unwrap();
    let f = parse_and_evaluate("t/(1-t)", &b, 8).unwrap();
    let pair = ShefferPair::new(g, f, ReferenceSequence::Classical).unwrap();
    let seq = sequence_from_gf(&pair, 8).unwrap();
    assert!(biorthogonality_check(&pair, &seq).unwrap().passed());
    let spec =
        IteratedSpec::square(pair, Normalization::Unit).with_order(CompositionOrder::Theorem22);
    let report = consistency_report(&spec, 6);
    assert!(report.main_routes_agree(), "{report}");
    assert!(report.orders_agree);
}
