mod common;

use proptest::prelude::*;

use cubical::axioms::{
    check_axiom, classify, enumerate_messages, witness_replays, Axiom, CheckOptions, Method, MessageFilter,
    SystemKind,
};
use common::*;

#[test]
fn fixture_verdicts() {
    let expected = [
        ("cub4.tks", SystemKind::CubicalNotMedium),
        ("cube3.tks", SystemKind::Medium),
        ("edge.tks", SystemKind::Medium),
        ("example41.fam", SystemKind::CubicalNotMedium),
        ("hexagon.fam", SystemKind::Medium),
        ("mixed.tks", SystemKind::NotCubical),
        ("one_way.tks", SystemKind::NotCubical),
        ("square.tks", SystemKind::Medium),
        ("triangle.tks", SystemKind::NotCubical),
        ("witness_c1.tks", SystemKind::NotCubical),
        ("witness_c2.tks", SystemKind::NotCubical),
        ("witness_c3.tks", SystemKind::NotCubical),
        ("witness_c4.tks", SystemKind::NotCubical),
    ];
    let all = fixtures();
    assert_eq!(all.len(), expected.len());
    for ((name, doc), (want_name, want)) in all.iter().zip(expected) {
        assert_eq!(name, want_name);
        assert_eq!(classify(&doc.system).kind, want, "{name}");
    }
}

#[test]
fn every_failing_verdict_replays() {
    for (name, doc) in fixtures() {
        for v in classify(&doc.system).failing() {
            assert!(witness_replays(&doc.system, v), "{name}: {}", v.describe(&doc.system));
        }
    }
}

#[test]
fn closed_filter_matches_literal_definition() {
    let doc = fixture("cub4.tks");
    let sys = &doc.system;
    for s in sys.states() {
        let closed: Vec<_> = enumerate_messages(sys, s, 6, MessageFilter::Closed)
            .map(Result::unwrap)
            .collect();
        let literal: Vec<_> = enumerate_messages(sys, s, 6, MessageFilter::All)
            .map(Result::unwrap)
            .filter(|m| !m.is_empty() && sys.apply(s, m) == s)
            .collect();
        assert_eq!(closed, literal);
    }
}

fn agree(sys: &cubical::system::TokenSystem) -> Result<(), TestCaseError> {
    let bound = 2 * sys.state_count();
    for axiom in Axiom::ALL {
        let exact = check_axiom(sys, axiom, &CheckOptions::default());
        let bounded = check_axiom(sys, axiom, &CheckOptions::bounded(bound));
        if matches!(axiom, Axiom::C3 | Axiom::C4 | Axiom::Mb) {
            prop_assert_eq!(bounded.method, Method::Bounded(bound));
            prop_assert_eq!(exact.holds, bounded.holds, "{} on {}", axiom, sys);
        }
        if !exact.holds {
            prop_assert!(witness_replays(sys, &exact), "{}", exact.describe(sys));
        }
        if !bounded.holds {
            prop_assert!(witness_replays(sys, &bounded), "{}", bounded.describe(sys));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exact_and_bounded_agree_on_random_systems(seed in any::<u64>()) {
        let sys = random_token_system(seed, 5, 3);
        prop_assume!(sys.is_some());
        agree(&sys.unwrap())?;
    }

    #[test]
    fn gsystems_are_cubical(seed in any::<u64>()) {
        let g = random_gsystem(seed, 5, 20);
        let c = classify(g.system());
        prop_assert!(c.kind != SystemKind::NotCubical);
        // Mb always holds in a G-system: no token repeats without its reverse.
        prop_assert!(c.verdict(Axiom::Mb).holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_and_bounded_agree_on_small_gsystems(seed in any::<u64>()) {
        let g = random_gsystem(seed, 3, 6);
        agree(g.system())?;
    }
}
