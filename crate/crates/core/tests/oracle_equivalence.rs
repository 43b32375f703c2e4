//! Pipelines against the brute-force oracle on small random instances.

use std::collections::BTreeSet;

use moflow::biobjective::all_supported_flows_bi;
use moflow::instances::{random, RandomParams};
use moflow::multiobjective::all_supported_flows;
use moflow::oracle::{classify, Label, DEFAULT_CAP};
use moflow::{verify_optimal, Flow, Network};

fn instance(objectives: usize, seed: u64) -> Network {
    random(RandomParams {
        nodes: 3 + (seed % 4) as usize,
        arcs: 4 + (seed % 7) as usize,
        objectives,
        max_cost: 5,
        max_capacity: 3,
        seed,
    })
}

fn check(net: &Network, flows: &[moflow::SupportedFlow]) -> BTreeSet<Flow> {
    for f in flows {
        assert!(f.witness.is_strictly_positive());
        assert!(verify_optimal(net, &f.witness, &f.flow).unwrap().is_optimal());
    }
    let set: BTreeSet<Flow> = flows.iter().map(|f| f.flow.clone()).collect();
    assert_eq!(set.len(), flows.len(), "duplicate emission");
    set
}

#[test]
fn bi_objective_matches_oracle() {
    for seed in 0..40 {
        let net = instance(2, seed);
        let oracle = classify(&net, DEFAULT_CAP).unwrap();
        let expected: BTreeSet<Flow> = oracle.flows_labelled(Label::Supported).into_iter().cloned().collect();
        assert_eq!(check(&net, &all_supported_flows_bi(&net).unwrap()), expected, "bi seed {seed}");
        assert_eq!(check(&net, &all_supported_flows(&net).unwrap()), expected, "mo seed {seed}");
        assert_eq!(oracle.count(Label::WeaklySupportedOnly), 0, "seed {seed}");
    }
}

#[test]
fn three_objectives_match_oracle() {
    for seed in 0..40 {
        let net = instance(3, seed);
        let oracle = classify(&net, DEFAULT_CAP).unwrap();
        let expected: BTreeSet<Flow> = oracle.flows_labelled(Label::Supported).into_iter().cloned().collect();
        assert_eq!(check(&net, &all_supported_flows(&net).unwrap()), expected, "seed {seed}");
    }
}

#[test]
fn four_objectives_match_oracle() {
    for seed in 0..15 {
        let net = instance(4, seed);
        let oracle = classify(&net, DEFAULT_CAP).unwrap();
        let expected: BTreeSet<Flow> = oracle.flows_labelled(Label::Supported).into_iter().cloned().collect();
        assert_eq!(check(&net, &all_supported_flows(&net).unwrap()), expected, "seed {seed}");
    }
}
