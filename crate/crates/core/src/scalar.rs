//! Weighted-sum scalarization and an exact single-objective min-cost-flow
//! solver with node-potential optimality certificates.
//!
//! Rational costs are scaled by the common denominator to 128-bit integers
//! for the solver; potentials are returned as rationals in the original
//! scale. Reduced costs follow `c_ij - pi_i + pi_j`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::network::{outcome, Flow, Network};
use crate::rational::{self, Rational};

/// Non-negative, nonzero weights for the objectives. Stored unnormalized;
/// the argmin of the weighted sum is invariant under positive scaling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeight("empty weight vector".into()));
        }
        if components.iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidWeight("negative component".into()));
        }
        if components.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidWeight("all components are zero".into()));
        }
        Ok(WeightVector(components))
    }

    pub fn from_integers(components: &[i64]) -> Result<Self> {
        Self::new(components.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn uniform(d: usize) -> Self {
        WeightVector(vec![rational::int(1); d])
    }

    pub fn unit(d: usize, k: usize) -> Self {
        let mut v = vec![rational::int(0); d];
        v[k] = rational::int(1);
        WeightVector(v)
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Every component is positive (an interior weight).
    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|c| c.is_positive())
    }

    /// Scaled to unit 1-norm, for display.
    pub fn normalized(&self) -> Vec<Rational> {
        let total: Rational = self.0.iter().sum();
        self.0.iter().map(|c| c / &total).collect()
    }

    /// The positive multiple that is a primitive integer vector.
    pub fn integer_scaled(&self) -> WeightVector {
        WeightVector(rational::primitive_integer_vector(&self.0))
    }

    pub fn scaled(&self, factor: &Rational) -> Result<WeightVector> {
        if !factor.is_positive() {
            return Err(Error::InvalidWeight("scale factor must be positive".into()));
        }
        Ok(WeightVector(self.0.iter().map(|c| c * factor).collect()))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", rational::format_list(&self.0))
    }
}

fn check_weight(network: &Network, weights: &WeightVector) -> Result<()> {
    if weights.dim() != network.objectives() {
        return Err(Error::Dimension {
            expected: network.objectives(),
            found: weights.dim(),
        });
    }
    Ok(())
}

/// Single-objective view of a network under a weight vector.
#[derive(Debug, Clone)]
pub struct ScalarNetwork<'a> {
    pub network: &'a Network,
    pub costs: Vec<Rational>,
}

/// Arc costs `lambda^T c_a`; bounds and balances are those of `network`.
pub fn scalarize<'a>(network: &'a Network, weights: &WeightVector) -> Result<ScalarNetwork<'a>> {
    check_weight(network, weights)?;
    let costs = network
        .arcs()
        .iter()
        .map(|a| rational::dot(weights.components(), &a.cost))
        .collect();
    Ok(ScalarNetwork { network, costs })
}

/// Node potentials certifying optimality of a flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potentials(pub Vec<Rational>);

impl Potentials {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn reduced_cost(&self, network: &Network, costs: &[Rational], arc: usize) -> Rational {
        let a = network.arc(arc);
        &costs[arc] - &self.0[a.tail] + &self.0[a.head]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSolution {
    pub flow: Flow,
    pub potentials: Potentials,
    pub objective_value: Rational,
}

/// A residual arc: forward (`forward == true`, increases flow on `arc`) or
/// backward (decreases it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidualArc {
    pub arc: usize,
    pub forward: bool,
}

impl ResidualArc {
    fn endpoints(self, network: &Network) -> (usize, usize) {
        let a = network.arc(self.arc);
        if self.forward {
            (a.tail, a.head)
        } else {
            (a.head, a.tail)
        }
    }
}

/// Residual arcs of `flow` in canonical order (per arc: forward, backward).
pub fn residual_arcs(network: &Network, flow: &Flow) -> Vec<(ResidualArc, i64)> {
    let mut out = Vec::new();
    for (idx, (arc, &x)) in network.arcs().iter().zip(flow.values()).enumerate() {
        if x < arc.upper {
            out.push((ResidualArc { arc: idx, forward: true }, arc.upper - x));
        }
        if x > arc.lower {
            out.push((ResidualArc { arc: idx, forward: false }, x - arc.lower));
        }
    }
    out
}

/// True iff every residual arc of `flow` has non-negative reduced cost.
pub fn certificate_holds(
    network: &Network,
    costs: &[Rational],
    flow: &Flow,
    potentials: &Potentials,
) -> bool {
    residual_arcs(network, flow).iter().all(|(r, _)| {
        let rc = potentials.reduced_cost(network, costs, r.arc);
        if r.forward {
            !rc.is_negative()
        } else {
            !rc.is_positive()
        }
    })
}

/// Integer-scaled costs: `costs[a] = scale * c_a`.
struct IntCosts {
    costs: Vec<i128>,
    scale: BigInt,
}

const COST_LIMIT: i128 = 1 << 62;

impl IntCosts {
    fn new(costs: &[Rational]) -> Result<Self> {
        let scale = rational::common_denominator(costs);
        let costs = costs
            .iter()
            .map(|c| {
                rational::scaled_to_i128(c, &scale)
                    .filter(|v| v.abs() < COST_LIMIT)
                    .ok_or(Error::Overflow("scaled arc cost exceeds 2^62"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntCosts { costs, scale })
    }

    fn potentials(&self, pi: &[i128]) -> Potentials {
        let scale = Rational::from_integer(self.scale.clone());
        Potentials(
            pi.iter()
                .map(|&p| Rational::from_integer(BigInt::from(p)) / &scale)
                .collect(),
        )
    }
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("potential arithmetic"))
}

/// Successive shortest paths with Dijkstra on reduced costs. Negative-cost
/// arcs start saturated so that zero potentials are dual feasible.
fn successive_shortest_paths(network: &Network, costs: &[i128]) -> Result<(Vec<i64>, Vec<i128>)> {
    let n = network.node_count();
    let arcs = network.arcs();
    let total: i128 = network.balances().iter().map(|&b| b as i128).sum();
    if total != 0 || arcs.iter().any(|a| a.lower > a.upper) {
        return Err(Error::Infeasible);
    }

    let mut x: Vec<i64> = arcs
        .iter()
        .zip(costs)
        .map(|(a, &c)| if c < 0 { a.upper } else { a.lower })
        .collect();
    let mut need: Vec<i128> = network.balances().iter().map(|&b| b as i128).collect();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, a) in arcs.iter().enumerate() {
        need[a.tail] -= x[idx] as i128;
        need[a.head] += x[idx] as i128;
        adjacency[a.tail].push(idx);
        adjacency[a.head].push(idx);
    }
    let mut pi = vec![0i128; n];

    let mut dist = vec![i128::MAX; n];
    let mut parent: Vec<Option<ResidualArc>> = vec![None; n];
    while need.iter().any(|&e| e > 0) {
        dist.iter_mut().for_each(|d| *d = i128::MAX);
        parent.iter_mut().for_each(|p| *p = None);
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        for (v, &e) in need.iter().enumerate() {
            if e > 0 {
                dist[v] = 0;
                heap.push(Reverse((0i128, v)));
            }
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            for &idx in &adjacency[v] {
                let a = &arcs[idx];
                let (forward, w) = if a.tail == v && x[idx] < a.upper {
                    (true, a.head)
                } else if a.head == v && x[idx] > a.lower {
                    (false, a.tail)
                } else {
                    continue;
                };
                let kappa = if forward { costs[idx] } else { -costs[idx] };
                let rc = checked(kappa.checked_sub(pi[v]).and_then(|t| t.checked_add(pi[w])))?;
                let cand = checked(d.checked_add(rc))?;
                if cand < dist[w] {
                    dist[w] = cand;
                    parent[w] = Some(ResidualArc { arc: idx, forward });
                    heap.push(Reverse((cand, w)));
                }
            }
        }

        let target = (0..n)
            .filter(|&v| done[v] && need[v] < 0)
            .min_by_key(|&v| (dist[v], v))
            .ok_or(Error::Infeasible)?;
        let reach = (0..n).filter(|&v| done[v]).map(|v| dist[v]).max().unwrap_or(0);
        for v in 0..n {
            let dv = if done[v] { dist[v] } else { reach };
            pi[v] = checked(pi[v].checked_sub(dv))?;
        }

        let mut path = Vec::new();
        let mut v = target;
        while let Some(r) = parent[v] {
            path.push(r);
            v = r.endpoints(network).0;
        }
        let root = v;
        let mut delta = need[root].min(-need[target]);
        for r in &path {
            let a = &arcs[r.arc];
            let cap = if r.forward { a.upper - x[r.arc] } else { x[r.arc] - a.lower };
            delta = delta.min(cap as i128);
        }
        debug_assert!(delta > 0);
        for r in &path {
            if r.forward {
                x[r.arc] += delta as i64;
            } else {
                x[r.arc] -= delta as i64;
            }
        }
        need[root] -= delta;
        need[target] += delta;
    }
    Ok((x, pi))
}

/// Minimizes `sum_a costs[a] * f_a` over feasible flows.
pub fn solve_costs(network: &Network, costs: &[Rational]) -> Result<ScalarSolution> {
    if costs.len() != network.arc_count() {
        return Err(Error::Dimension {
            expected: network.arc_count(),
            found: costs.len(),
        });
    }
    let ints = IntCosts::new(costs)?;
    let (x, pi) = successive_shortest_paths(network, &ints.costs)?;
    let flow = Flow::new(x);
    let objective_value = rational::dot(
        costs,
        &flow.values().iter().map(|&v| rational::int(v)).collect::<Vec<_>>(),
    );
    Ok(ScalarSolution {
        flow,
        potentials: ints.potentials(&pi),
        objective_value,
    })
}

/// Optimal flow of the weighted-sum problem `min lambda^T C f`.
pub fn solve(network: &Network, weights: &WeightVector) -> Result<ScalarSolution> {
    let scalar = scalarize(network, weights)?;
    let mut sol = solve_costs(network, &scalar.costs)?;
    sol.objective_value = outcome(network, &sol.flow)?.weighted(weights.components());
    Ok(sol)
}

/// Lexicographically minimal flow for the objective order (a permutation of
/// `0..d`). Each stage re-solves on the subnetwork of flows that are optimal
/// for all previous stages, obtained by fixing arcs with nonzero reduced cost
/// at the bound complementary slackness dictates.
///
/// The returned potentials and objective value refer to the first objective
/// in `order`; they certify optimality for that objective on `network`.
pub fn solve_lexicographic(network: &Network, order: &[usize]) -> Result<ScalarSolution> {
    let d = network.objectives();
    let mut seen = vec![false; d];
    if order.len() != d || order.iter().any(|&k| k >= d || std::mem::replace(&mut seen[k], true)) {
        return Err(Error::InvalidWeight(format!(
            "objective order must be a permutation of 1..={d}"
        )));
    }
    let mut restricted = network.clone();
    let mut first: Option<ScalarSolution> = None;
    let mut flow = None;
    for &k in order {
        let costs = network.objective_costs(k);
        let sol = solve_costs(&restricted, &costs)?;
        let bounds: Vec<(i64, i64)> = (0..restricted.arc_count())
            .map(|idx| {
                let a = restricted.arc(idx);
                let rc = sol.potentials.reduced_cost(&restricted, &costs, idx);
                if rc.is_positive() {
                    (a.lower, a.lower)
                } else if rc.is_negative() {
                    (a.upper, a.upper)
                } else {
                    (a.lower, a.upper)
                }
            })
            .collect();
        restricted = restricted.with_bounds(&bounds);
        flow = Some(sol.flow.clone());
        first.get_or_insert(sol);
    }
    let mut first = first.expect("at least one objective");
    let flow = flow.expect("at least one objective");
    first.objective_value = outcome(network, &flow)?.components()[order[0]].clone();
    first.flow = flow;
    Ok(first)
}

/// A residual cycle with negative total cost, witnessing non-optimality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCycle {
    pub arcs: Vec<ResidualArc>,
    pub cost: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimality {
    Optimal(Potentials),
    NotOptimal(NegativeCycle),
}

impl Optimality {
    pub fn is_optimal(&self) -> bool {
        matches!(self, Optimality::Optimal(_))
    }
}

/// Negative-cycle test on the residual graph of `flow` (Bellman-Ford).
pub fn verify_optimal_costs(network: &Network, costs: &[Rational], flow: &Flow) -> Result<Optimality> {
    flow.check_feasible(network)?;
    let ints = IntCosts::new(costs)?;
    let n = network.node_count();
    let residual: Vec<(ResidualArc, usize, usize, i128)> = residual_arcs(network, flow)
        .into_iter()
        .map(|(r, _)| {
            let (p, q) = r.endpoints(network);
            let c = ints.costs[r.arc];
            (r, p, q, if r.forward { c } else { -c })
        })
        .collect();

    let mut dist = vec![0i128; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut relaxed_node = None;
    for _ in 0..n {
        relaxed_node = None;
        for (i, &(_, p, q, c)) in residual.iter().enumerate() {
            let cand = checked(dist[p].checked_add(c))?;
            if cand < dist[q] {
                dist[q] = cand;
                parent[q] = Some(i);
                relaxed_node = Some(q);
            }
        }
        if relaxed_node.is_none() {
            break;
        }
    }

    let Some(mut v) = relaxed_node else {
        let pi: Vec<i128> = dist.iter().map(|d| -d).collect();
        return Ok(Optimality::Optimal(ints.potentials(&pi)));
    };
    for _ in 0..n {
        v = residual[parent[v].expect("relaxed node has a parent")].1;
    }
    let start = v;
    let mut cycle = Vec::new();
    loop {
        let i = parent[v].expect("cycle node has a parent");
        cycle.push(residual[i].0);
        v = residual[i].1;
        if v == start {
            break;
        }
    }
    cycle.reverse();
    let cost = cycle
        .iter()
        .map(|r| if r.forward { costs[r.arc].clone() } else { -costs[r.arc].clone() })
        .sum();
    Ok(Optimality::NotOptimal(NegativeCycle { arcs: cycle, cost }))
}

pub fn verify_optimal(network: &Network, weights: &WeightVector, flow: &Flow) -> Result<Optimality> {
    let scalar = scalarize(network, weights)?;
    verify_optimal_costs(network, &scalar.costs, flow)
}

/// Wraps a flow known to be optimal into a solution with certificate.
pub fn certify(network: &Network, weights: &WeightVector, flow: &Flow) -> Result<ScalarSolution> {
    match verify_optimal(network, weights, flow)? {
        Optimality::Optimal(potentials) => Ok(ScalarSolution {
            objective_value: outcome(network, flow)?.weighted(weights.components()),
            flow: flow.clone(),
            potentials,
        }),
        Optimality::NotOptimal(_) => Err(Error::NotOptimal),
    }
}
