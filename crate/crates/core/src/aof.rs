//! All optimal integer flows of a weighted-sum problem.
//!
//! Given an optimal flow with potentials, the optimal flows are exactly the
//! flows that differ from it by an integer circulation on the residual arcs
//! of reduced cost zero. Equivalently, each arc is confined to the range its
//! zero-cost residual arcs allow. The enumerator fixes arcs in index order,
//! tries each value of the current arc in increasing order and descends only
//! if the partial assignment still extends to a feasible flow (one max-flow
//! test per candidate). Every leaf is a distinct optimal flow, emitted in
//! lexicographic order.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::maxflow::bounded_flow_feasible;
use crate::network::{Flow, Network};
use crate::scalar::{
    certificate_holds, residual_arcs, scalarize, ResidualArc, ScalarSolution, WeightVector,
};

/// Residual arcs of reduced cost exactly zero, with residual capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroResidualNetwork {
    arcs: Vec<(ResidualArc, i64)>,
    base: Flow,
    bounds: Vec<(i64, i64)>,
}

impl ZeroResidualNetwork {
    pub fn arcs(&self) -> &[(ResidualArc, i64)] {
        &self.arcs
    }

    pub fn base_flow(&self) -> &Flow {
        &self.base
    }

    /// Per-arc value range reachable by zero-cost circulations.
    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    /// Whether the zero-cost residual arcs contain a directed cycle, i.e.
    /// whether an alternative optimum exists.
    pub fn has_cycle(&self, network: &Network) -> bool {
        let n = network.node_count();
        let mut adjacency = vec![Vec::new(); n];
        for (r, _) in &self.arcs {
            let a = network.arc(r.arc);
            let (p, q) = if r.forward { (a.tail, a.head) } else { (a.head, a.tail) };
            adjacency[p].push(q);
        }
        // 0 = unvisited, 1 = on stack, 2 = finished
        let mut state = vec![0u8; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some((v, i)) = stack.last_mut() {
                if let Some(&w) = adjacency[*v].get(*i) {
                    *i += 1;
                    match state[w] {
                        1 => return true,
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        _ => {}
                    }
                } else {
                    state[*v] = 2;
                    stack.pop();
                }
            }
        }
        false
    }
}

/// Builds the zero-reduced-cost residual network of `solution`. Fails with
/// [`Error::NotOptimal`] if the potentials do not certify optimality.
pub fn zero_residual(
    network: &Network,
    weights: &WeightVector,
    solution: &ScalarSolution,
) -> Result<ZeroResidualNetwork> {
    let costs = scalarize(network, weights)?.costs;
    solution.flow.check_feasible(network)?;
    if solution.potentials.values().len() != network.node_count()
        || !certificate_holds(network, &costs, &solution.flow, &solution.potentials)
    {
        return Err(Error::NotOptimal);
    }
    let arcs: Vec<(ResidualArc, i64)> = residual_arcs(network, &solution.flow)
        .into_iter()
        .filter(|(r, _)| solution.potentials.reduced_cost(network, &costs, r.arc).is_zero())
        .collect();
    let mut bounds: Vec<(i64, i64)> = solution.flow.values().iter().map(|&x| (x, x)).collect();
    for (r, cap) in &arcs {
        if r.forward {
            bounds[r.arc].1 += cap;
        } else {
            bounds[r.arc].0 -= cap;
        }
    }
    Ok(ZeroResidualNetwork {
        arcs,
        base: solution.flow.clone(),
        bounds,
    })
}

/// Lazily enumerated optimal flows. `keep` filters emission only; the search
/// itself is never pruned by it.
pub struct FlowStream<'a, F> {
    network: &'a Network,
    lo: Vec<i64>,
    hi: Vec<i64>,
    assignment: Vec<i64>,
    /// Next candidate value per fixed depth.
    stack: Vec<i64>,
    keep: F,
    emitted: usize,
    visited: usize,
    started: bool,
    finished: bool,
}

impl<'a, F: FnMut(&Flow) -> bool> FlowStream<'a, F> {
    /// Number of flows emitted so far.
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Number of optimal flows reached so far, including filtered ones.
    pub fn visited(&self) -> usize {
        self.visited
    }

    fn feasible_with(&self, depth: usize, value: i64) -> bool {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        lo[..depth].copy_from_slice(&self.assignment[..depth]);
        hi[..depth].copy_from_slice(&self.assignment[..depth]);
        lo[depth] = value;
        hi[depth] = value;
        bounded_flow_feasible(self.network, &lo, &hi)
    }

    fn next_leaf(&mut self) -> Option<Flow> {
        let m = self.lo.len();
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            if m == 0 {
                self.finished = true;
                return Some(Flow::new(Vec::new()));
            }
            self.stack.push(self.lo[0]);
        }
        while let Some(&candidate) = self.stack.last() {
            let depth = self.stack.len() - 1;
            if candidate > self.hi[depth] {
                self.stack.pop();
                continue;
            }
            *self.stack.last_mut().expect("nonempty") = candidate + 1;
            // a fixed arc cannot change feasibility established by the parent
            let ok = self.lo[depth] == self.hi[depth] || self.feasible_with(depth, candidate);
            if !ok {
                continue;
            }
            self.assignment[depth] = candidate;
            if depth + 1 == m {
                return Some(Flow::new(self.assignment.clone()));
            }
            self.stack.push(self.lo[depth + 1]);
        }
        self.finished = true;
        None
    }
}

impl<F: FnMut(&Flow) -> bool> Iterator for FlowStream<'_, F> {
    type Item = Flow;

    fn next(&mut self) -> Option<Flow> {
        while let Some(flow) = self.next_leaf() {
            self.visited += 1;
            if (self.keep)(&flow) {
                self.emitted += 1;
                return Some(flow);
            }
        }
        None
    }
}

/// Streams every optimal flow of `min lambda^T C f` exactly once, in
/// lexicographic order of arc values, restricted to those accepted by `keep`.
pub fn enumerate_optimal_flows<'a, F: FnMut(&Flow) -> bool>(
    network: &'a Network,
    weights: &WeightVector,
    seed: &ScalarSolution,
    keep: F,
) -> Result<FlowStream<'a, F>> {
    let zero = zero_residual(network, weights, seed)?;
    Ok(stream_from_bounds(network, zero.bounds(), keep))
}

pub(crate) fn stream_from_bounds<'a, F: FnMut(&Flow) -> bool>(
    network: &'a Network,
    bounds: &[(i64, i64)],
    keep: F,
) -> FlowStream<'a, F> {
    let (lo, hi): (Vec<i64>, Vec<i64>) = bounds.iter().copied().unzip();
    let m = lo.len();
    FlowStream {
        network,
        assignment: lo.clone(),
        lo,
        hi,
        stack: Vec::with_capacity(m),
        keep,
        emitted: 0,
        visited: 0,
        started: false,
        finished: false,
    }
}
