//! Named instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::network::{Arc, Network};
use crate::rational::{int, ratio, Rational};

/// Tri-objective five-node instance separating supported from weakly
/// supported outcomes. All arcs have bounds `[0, 4]`.
pub fn fig2() -> Network {
    let c = |a: Rational, b: Rational, e: Rational| vec![a, b, e];
    let arcs = vec![
        Arc::new(0, 1, 0, 4, c(int(0), int(4), ratio(5, 2))),
        Arc::new(1, 2, 0, 4, c(int(0), int(4), ratio(5, 2))),
        Arc::new(2, 3, 0, 4, c(int(1), int(1), ratio(1, 8))),
        Arc::new(3, 4, 0, 4, c(int(1), int(1), ratio(1, 8))),
        Arc::new(0, 2, 0, 4, c(int(4), int(4), int(5))),
        Arc::new(2, 4, 0, 4, c(int(3), int(1), ratio(5, 4))),
    ];
    Network::new(vec![1, 0, 3, 0, -4], arcs, 3).expect("fig2 instance is well formed")
}

pub const FIG2_COMMENTS: &[&str] = &[
    "tri-objective instance: supported outcomes form a proper subset of the",
    "weakly supported ones; l = 0, u = 4 on every arc",
];

/// Star network: source `s` (node 1) with supply `k`, transshipment nodes
/// `2..=k+1`, sink `t` (node `k+2`) with demand `k`, arcs `s->i` then `i->t`,
/// capacity `k`, every cost component equal to 1. It has `C(2k-1, k)` flows,
/// all with the same outcome.
pub fn star(k: usize, objectives: usize) -> Network {
    assert!(k >= 1 && objectives >= 1);
    let n = k + 2;
    let sink = n - 1;
    let cap = k as i64;
    let ones = || vec![int(1); objectives];
    let mut arcs: Vec<Arc> = (1..=k).map(|i| Arc::new(0, i, 0, cap, ones())).collect();
    arcs.extend((1..=k).map(|i| Arc::new(i, sink, 0, cap, ones())));
    let mut balances = vec![0; n];
    balances[0] = cap;
    balances[sink] = -cap;
    Network::new(balances, arcs, objectives).expect("star instance is well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub nodes: usize,
    pub arcs: usize,
    pub objectives: usize,
    pub max_cost: i64,
    pub max_capacity: i64,
    pub seed: u64,
}

/// Random connected, feasible instance. Connectivity comes from a random
/// spanning tree; balances are the divergence of a random flow within the
/// bounds, so at least one feasible flow exists. Lower bounds are 0 and costs
/// are integers in `[0, max_cost]`. Identical parameters give identical
/// instances.
pub fn random(params: RandomParams) -> Network {
    let RandomParams {
        nodes,
        objectives,
        max_cost,
        max_capacity,
        seed,
        ..
    } = params;
    assert!(nodes >= 1 && objectives >= 1 && max_cost >= 0 && max_capacity >= 0);
    let arc_count = if nodes == 1 { 0 } else { params.arcs.max(nodes - 1) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut endpoints = Vec::with_capacity(arc_count);
    for v in 1..nodes {
        let u = rng.random_range(0..v);
        endpoints.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
    }
    while endpoints.len() < arc_count {
        let a = rng.random_range(0..nodes);
        let b = rng.random_range(0..nodes);
        if a != b {
            endpoints.push((a, b));
        }
    }

    let mut balances = vec![0i64; nodes];
    let mut arcs = Vec::with_capacity(arc_count);
    for (tail, head) in endpoints {
        let upper = rng.random_range(0..=max_capacity);
        let x = rng.random_range(0..=upper);
        balances[tail] += x;
        balances[head] -= x;
        let cost = (0..objectives)
            .map(|_| int(rng.random_range(0..=max_cost)))
            .collect();
        arcs.push(Arc::new(tail, head, 0, upper, cost));
    }
    Network::new(balances, arcs, objectives).expect("random instance is well formed")
}
