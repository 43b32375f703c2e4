//! Brute-force listing of every feasible integer flow.
//!
//! Deliberately independent of the solver and the optimal-flow enumerator:
//! feasibility of a partial fixing is decided by Edmonds-Karp on a dense
//! capacity matrix.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::network::{Flow, Network};

fn max_flow(cap: &mut [Vec<i128>], s: usize, t: usize) -> i128 {
    let n = cap.len();
    let mut total = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if parent[w] == usize::MAX && cap[v][w] > 0 {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if parent[t] == usize::MAX {
            return total;
        }
        let mut push = i128::MAX;
        let mut w = t;
        while w != s {
            let v = parent[w];
            push = push.min(cap[v][w]);
            w = v;
        }
        let mut w = t;
        while w != s {
            let v = parent[w];
            cap[v][w] -= push;
            cap[w][v] += push;
            w = v;
        }
        total += push;
    }
}

/// Whether some flow meets the balances with `lo <= f <= hi`.
fn feasible(network: &Network, lo: &[i64], hi: &[i64]) -> bool {
    let n = network.node_count();
    let (s, t) = (n, n + 1);
    let mut cap = vec![vec![0i128; n + 2]; n + 2];
    let mut excess: Vec<i128> = network.balances().iter().map(|&b| b.into()).collect();
    for (a, arc) in network.arcs().iter().enumerate() {
        cap[arc.tail][arc.head] += (hi[a] - lo[a]) as i128;
        excess[arc.tail] -= lo[a] as i128;
        excess[arc.head] += lo[a] as i128;
    }
    let mut need = 0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            cap[s][v] += e;
            need += e;
        } else {
            cap[v][t] -= e;
        }
    }
    max_flow(&mut cap, s, t) == need
}

/// Every feasible integer flow, in lexicographic order. Fails once more than
/// `cap` flows exist.
pub fn enumerate_all_flows(network: &Network, cap: usize) -> Result<Vec<Flow>> {
    let mut lo: Vec<i64> = network.arcs().iter().map(|a| a.lower).collect();
    let mut hi: Vec<i64> = network.arcs().iter().map(|a| a.upper).collect();
    let mut out = Vec::new();
    if !feasible(network, &lo, &hi) {
        return Ok(out);
    }
    fn recurse(
        network: &Network,
        depth: usize,
        lo: &mut [i64],
        hi: &mut [i64],
        out: &mut Vec<Flow>,
        cap: usize,
    ) -> Result<()> {
        if depth == lo.len() {
            if out.len() == cap {
                return Err(Error::OracleCapExceeded { cap });
            }
            out.push(Flow::new(lo.to_vec()));
            return Ok(());
        }
        let (l, h) = (lo[depth], hi[depth]);
        for v in l..=h {
            lo[depth] = v;
            hi[depth] = v;
            if feasible(network, lo, hi) {
                recurse(network, depth + 1, lo, hi, out, cap)?;
            }
        }
        lo[depth] = l;
        hi[depth] = h;
        Ok(())
    }
    recurse(network, 0, &mut lo, &mut hi, &mut out, cap)?;
    Ok(out)
}
