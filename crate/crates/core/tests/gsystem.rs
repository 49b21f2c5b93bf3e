mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubical::format::{format_family, parse_family};
use cubical::gsystem::{build_gsystem, distance, message_to_walk, walk_to_message, CubeGraph, SetFamily};
use cubical::representation::{embed, system_graph, verify_embedding};
use cubical::system::{check_isomorphism, StateId};
use common::*;

#[test]
fn power_set_gsystem_is_a_medium_cube() {
    let g = build_gsystem(CubeGraph::induced(SetFamily::power_set(["x", "y", "z"]).unwrap()).unwrap()).unwrap();
    let sys = g.system();
    assert_eq!((sys.state_count(), sys.token_count()), (8, 6));
    assert_eq!(cubical::axioms::classify(sys).kind, cubical::axioms::SystemKind::Medium);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edges_join_members_at_distance_one(seed in any::<u64>()) {
        let g = random_gsystem(seed, 6, 30);
        for &(a, b) in g.graph().edges() {
            prop_assert_eq!(distance(g.family().member(a), g.family().member(b)), 1);
        }
        // The token graph is exactly the cube subgraph.
        let graph = system_graph(g.system()).unwrap();
        let edges: Vec<(usize, usize)> = graph.edges().iter().map(|&(a, b, _)| (a.0, b.0)).collect();
        prop_assert_eq!(edges, g.graph().edges().to_vec());
    }

    #[test]
    fn walks_and_messages_correspond(seed in any::<u64>(), len in 0usize..12) {
        let g = random_gsystem(seed, 5, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let start = StateId(rng.gen_range(0..g.family().len()));
        let mut walk = vec![start];
        for _ in 0..len {
            let here = walk.last().unwrap().0;
            let next = g.graph().neighbors(here);
            walk.push(StateId(next[rng.gen_range(0..next.len())]));
        }
        let m = walk_to_message(&g, &walk).unwrap();
        prop_assert!(g.system().is_stepwise_effective(start, &m));
        prop_assert_eq!(g.system().produced_sequence(start, &m), walk.clone());
        prop_assert_eq!(message_to_walk(&g, start, &m).unwrap(), walk);
    }

    #[test]
    fn family_text_round_trips(seed in any::<u64>()) {
        let g = random_gsystem(seed, 5, 20);
        let text = format_family(g.graph());
        let back = parse_family(&text).unwrap();
        prop_assert_eq!(back.family().members(), g.family().members());
        prop_assert_eq!(back.edges(), g.graph().edges());
        prop_assert_eq!(format_family(&back), text);
    }

    #[test]
    fn any_base_gives_a_verified_embedding(seed in any::<u64>(), base in any::<prop::sample::Index>()) {
        let g = random_gsystem(seed, 5, 20);
        let sys = g.system();
        let base = StateId(base.index(sys.state_count()));
        let e = embed(sys, Some(base)).unwrap();
        prop_assert!(e.alpha[base.0].is_empty());
        prop_assert!(verify_embedding(sys, &e));
        prop_assert!(check_isomorphism(sys, e.gsystem().system(), &e.isomorphism()).unwrap());
        for s in sys.states() {
            prop_assert_eq!(e.alpha[s.0].len(), distance(g.member(s), g.member(base)));
        }
    }
}
