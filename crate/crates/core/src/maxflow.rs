//! Dinic max-flow and the bounded-flow feasibility test built on it.

use std::collections::VecDeque;

use crate::network::Network;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i128,
}

/// Dinic's algorithm on an explicit residual graph. Edge `2k` and `2k+1` are
/// a forward/backward pair.
#[derive(Debug, Clone)]
pub(crate) struct Dinic {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Dinic {
    pub(crate) fn new(nodes: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); nodes],
            edges: Vec::new(),
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: i128) {
        self.adjacency[from].push(self.edges.len());
        self.edges.push(Edge { to, cap });
        self.adjacency[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adjacency[v] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i128) -> i128 {
        if v == t {
            return pushed;
        }
        while self.cursor[v] < self.adjacency[v].len() {
            let e = self.adjacency[v][self.cursor[v]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Does a flow exist that meets the balances of `network` with
/// `lo[a] <= f_a <= hi[a]`?
pub(crate) fn bounded_flow_feasible(network: &Network, lo: &[i64], hi: &[i64]) -> bool {
    let n = network.node_count();
    let mut excess: Vec<i128> = network.balances().iter().map(|&b| b as i128).collect();
    let (source, sink) = (n, n + 1);
    let mut dinic = Dinic::new(n + 2);
    for (idx, arc) in network.arcs().iter().enumerate() {
        if lo[idx] > hi[idx] {
            return false;
        }
        excess[arc.tail] -= lo[idx] as i128;
        excess[arc.head] += lo[idx] as i128;
        if hi[idx] > lo[idx] {
            dinic.add_edge(arc.tail, arc.head, (hi[idx] - lo[idx]) as i128);
        }
    }
    let mut required = 0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            dinic.add_edge(source, v, e);
            required += e;
        } else if e < 0 {
            dinic.add_edge(v, sink, -e);
        }
    }
    dinic.max_flow(source, sink) == required
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn dinic_small() {
        let mut d = Dinic::new(4);
        d.add_edge(0, 1, 3);
        d.add_edge(0, 2, 2);
        d.add_edge(1, 2, 5);
        d.add_edge(1, 3, 2);
        d.add_edge(2, 3, 3);
        assert_eq!(d.max_flow(0, 3), 5);
    }

    #[test]
    fn feasibility_on_fig2() {
        let net = instances::fig2();
        let lo = vec![0; 6];
        let hi = vec![4; 6];
        assert!(bounded_flow_feasible(&net, &lo, &hi));
        // node 1 must ship one unit; closing both of its arcs is infeasible
        let mut hi2 = hi.clone();
        hi2[0] = 0;
        hi2[4] = 0;
        assert!(!bounded_flow_feasible(&net, &lo, &hi2));
    }
}
