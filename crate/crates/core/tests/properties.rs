use std::collections::BTreeSet;

use moflow::format::{parse_instance, write_instance};
use moflow::instances::{random, RandomParams};
use moflow::multiobjective::all_supported_flows;
use moflow::{dominance, outcome, solve, verify_optimal, Dominance, Network, OutcomeVector, WeightVector};
use proptest::prelude::*;

fn network() -> impl Strategy<Value = Network> {
    (2usize..6, 2usize..10, 2usize..4, 0i64..6, 0i64..4, any::<u64>()).prop_map(
        |(nodes, arcs, objectives, max_cost, max_capacity, seed)| {
            random(RandomParams {
                nodes,
                arcs,
                objectives,
                max_cost,
                max_capacity,
                seed,
            })
        },
    )
}

fn outcome_vector(d: usize) -> impl Strategy<Value = OutcomeVector> {
    prop::collection::vec(-3i64..4, d).prop_map(|v| OutcomeVector::from_integers(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instances_round_trip(net in network()) {
        let text = write_instance(&net, &["round trip"]);
        prop_assert_eq!(parse_instance(&text).unwrap(), net);
    }

    #[test]
    fn weighted_solutions_are_certified(net in network(), raw in prop::collection::vec(1i64..5, 3)) {
        let w = WeightVector::from_integers(&raw[..net.objectives()]).unwrap();
        let sol = solve(&net, &w).unwrap();
        prop_assert!(sol.flow.is_feasible(&net));
        prop_assert!(verify_optimal(&net, &w, &sol.flow).unwrap().is_optimal());
        prop_assert_eq!(outcome(&net, &sol.flow).unwrap().weighted(w.components()), sol.objective_value);
    }

    #[test]
    fn supported_flows_are_distinct_and_nondominated(net in network()) {
        let flows = all_supported_flows(&net).unwrap();
        prop_assert!(!flows.is_empty());
        let distinct: BTreeSet<_> = flows.iter().map(|f| f.flow.clone()).collect();
        prop_assert_eq!(distinct.len(), flows.len());
        for a in &flows {
            prop_assert!(a.witness.is_strictly_positive());
            for b in &flows {
                prop_assert!(!dominance(&b.outcome, &a.outcome).unwrap().dominates());
            }
        }
    }

    #[test]
    fn dominance_is_antisymmetric(y in outcome_vector(3), z in outcome_vector(3)) {
        let forward = dominance(&y, &z).unwrap();
        let backward = dominance(&z, &y).unwrap();
        prop_assert_eq!(forward == Dominance::Equal, y == z);
        prop_assert_eq!(forward.dominates(), backward == Dominance::Dominated);
        prop_assert!(!(forward.dominates() && backward.dominates()));
    }
}
