//! Instance model: capacitated directed networks with integer balances and
//! vector-valued rational arc costs, integer flows, and outcome vectors.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A directed arc. Node ids are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub lower: i64,
    pub upper: i64,
    pub cost: Vec<Rational>,
}

impl Arc {
    pub fn new(tail: usize, head: usize, lower: i64, upper: i64, cost: Vec<Rational>) -> Self {
        Self {
            tail,
            head,
            lower,
            upper,
            cost,
        }
    }
}

/// Network with `d` cost objectives. Arcs are identified by their index;
/// parallel arcs are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    balances: Vec<i64>,
    arcs: Vec<Arc>,
    objectives: usize,
}

impl Network {
    /// Builds a network after structural checks (node ids in range, cost
    /// vectors of length `objectives`). Semantic conditions are reported by
    /// [`Network::validate`].
    pub fn new(balances: Vec<i64>, arcs: Vec<Arc>, objectives: usize) -> Result<Self> {
        if balances.is_empty() {
            return Err(Error::InvalidNetwork("network has no nodes".into()));
        }
        if objectives == 0 {
            return Err(Error::InvalidNetwork("at least one objective is required".into()));
        }
        let n = balances.len();
        for (idx, arc) in arcs.iter().enumerate() {
            if arc.tail >= n || arc.head >= n {
                return Err(Error::InvalidNetwork(format!(
                    "arc {} references a node outside 1..={n}",
                    idx + 1
                )));
            }
            if arc.cost.len() != objectives {
                return Err(Error::Dimension {
                    expected: objectives,
                    found: arc.cost.len(),
                });
            }
        }
        Ok(Self {
            balances,
            arcs,
            objectives,
        })
    }

    pub fn node_count(&self) -> usize {
        self.balances.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn balances(&self) -> &[i64] {
        &self.balances
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, idx: usize) -> &Arc {
        &self.arcs[idx]
    }

    /// Same structure with every arc's bounds replaced.
    pub(crate) fn with_bounds(&self, bounds: &[(i64, i64)]) -> Network {
        let arcs = self
            .arcs
            .iter()
            .zip(bounds)
            .map(|(a, &(lower, upper))| Arc { lower, upper, ..a.clone() })
            .collect();
        Network {
            balances: self.balances.clone(),
            arcs,
            objectives: self.objectives,
        }
    }

    /// Checks the modelling assumptions: `l <= u`, balanced supplies, no
    /// self-loops, connected underlying graph.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (idx, arc) in self.arcs.iter().enumerate() {
            if arc.lower < 0 {
                violations.push(Violation::NegativeLowerBound { arc: idx });
            }
            if arc.lower > arc.upper {
                violations.push(Violation::CapacityOrder { arc: idx });
            }
            if arc.tail == arc.head {
                violations.push(Violation::SelfLoop { arc: idx });
            }
        }
        let total: i128 = self.balances.iter().map(|&b| b as i128).sum();
        if total != 0 {
            violations.push(Violation::Unbalanced { sum: total });
        }
        let components = self.component_count();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
        ValidationReport { violations }
    }

    fn component_count(&self) -> usize {
        let n = self.node_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for arc in &self.arcs {
            let (a, b) = (find(&mut parent, arc.tail), find(&mut parent, arc.head));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components
    }

    /// Scalar cost `c_a^k` of objective `k` on every arc.
    pub fn objective_costs(&self, k: usize) -> Vec<Rational> {
        self.arcs.iter().map(|a| a.cost[k].clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NegativeLowerBound { arc: usize },
    CapacityOrder { arc: usize },
    SelfLoop { arc: usize },
    Unbalanced { sum: i128 },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeLowerBound { arc } => {
                write!(f, "arc {} has a negative lower bound", arc + 1)
            }
            Violation::CapacityOrder { arc } => {
                write!(f, "arc {} has lower bound above upper bound", arc + 1)
            }
            Violation::SelfLoop { arc } => write!(f, "arc {} is a self-loop", arc + 1),
            Violation::Unbalanced { sum } => write!(f, "balances sum to {sum}, expected 0"),
            Violation::Disconnected { components } => {
                write!(f, "underlying graph has {components} connected components")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            let msg = self
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            Err(Error::InvalidNetwork(msg))
        }
    }
}

/// Integer arc-flow vector indexed like [`Network::arcs`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flow(Vec<i64>);

impl Flow {
    pub fn new(values: Vec<i64>) -> Self {
        Flow(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks bounds and flow conservation.
    pub fn check_feasible(&self, network: &Network) -> Result<()> {
        if self.0.len() != network.arc_count() {
            return Err(Error::Dimension {
                expected: network.arc_count(),
                found: self.0.len(),
            });
        }
        let mut net_out = vec![0i128; network.node_count()];
        for (idx, (arc, &x)) in network.arcs().iter().zip(&self.0).enumerate() {
            if x < arc.lower || x > arc.upper {
                return Err(Error::InfeasibleFlow(format!(
                    "arc {} carries {x}, outside [{}, {}]",
                    idx + 1,
                    arc.lower,
                    arc.upper
                )));
            }
            net_out[arc.tail] += x as i128;
            net_out[arc.head] -= x as i128;
        }
        for (node, (&out, &b)) in net_out.iter().zip(network.balances()).enumerate() {
            if out != b as i128 {
                return Err(Error::InfeasibleFlow(format!(
                    "node {} has net outflow {out}, balance {b}",
                    node + 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_feasible(&self, network: &Network) -> bool {
        self.check_feasible(network).is_ok()
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Image `C f` of a flow in objective space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeVector(Vec<Rational>);

impl OutcomeVector {
    pub fn new(components: Vec<Rational>) -> Self {
        OutcomeVector(components)
    }

    pub fn from_integers(components: &[i64]) -> Self {
        OutcomeVector(components.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn weighted(&self, weights: &[Rational]) -> Rational {
        rational::dot(&self.0, weights)
    }
}

impl fmt::Display for OutcomeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", rational::format_list(&self.0))
    }
}

/// `C f`, exact.
pub fn outcome(network: &Network, flow: &Flow) -> Result<OutcomeVector> {
    if flow.len() != network.arc_count() {
        return Err(Error::Dimension {
            expected: network.arc_count(),
            found: flow.len(),
        });
    }
    let mut acc = vec![rational::int(0); network.objectives()];
    for (arc, &x) in network.arcs().iter().zip(flow.values()) {
        if x == 0 {
            continue;
        }
        let x = rational::int(x);
        for (slot, c) in acc.iter_mut().zip(&arc.cost) {
            *slot += c * &x;
        }
    }
    Ok(OutcomeVector(acc))
}

/// Relation of `y` to `other` under the componentwise orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `y < other` in every component.
    StrictlyLess,
    /// `y <= other` componentwise and `y != other`, not strictly in every component.
    LeqDominates,
    Equal,
    /// `other` dominates `y` (weakly or strictly).
    Dominated,
    Incomparable,
}

impl Dominance {
    /// True for both `StrictlyLess` and `LeqDominates`.
    pub fn dominates(self) -> bool {
        matches!(self, Dominance::StrictlyLess | Dominance::LeqDominates)
    }
}

pub fn dominance(y: &OutcomeVector, other: &OutcomeVector) -> Result<Dominance> {
    if y.dim() != other.dim() {
        return Err(Error::Dimension {
            expected: y.dim(),
            found: other.dim(),
        });
    }
    let (mut less, mut greater, mut equal) = (0, 0, 0);
    for (a, b) in y.components().iter().zip(other.components()) {
        match a.cmp(b) {
            Ordering::Less => less += 1,
            Ordering::Greater => greater += 1,
            Ordering::Equal => equal += 1,
        }
    }
    let d = y.dim();
    Ok(if equal == d {
        Dominance::Equal
    } else if less == d {
        Dominance::StrictlyLess
    } else if greater == 0 {
        Dominance::LeqDominates
    } else if less == 0 {
        Dominance::Dominated
    } else {
        Dominance::Incomparable
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::rational::int;

    #[test]
    fn fig2_is_valid() {
        let net = instances::fig2();
        assert!(net.validate().is_valid());
        assert_eq!(net.balances(), &[1, 0, 3, 0, -4]);
    }

    #[test]
    fn single_node_is_valid() {
        let net = Network::new(vec![0], vec![], 1).unwrap();
        assert!(net.validate().is_valid());
    }

    #[test]
    fn isolated_nodes_are_disconnected() {
        let net = Network::new(vec![1, -1], vec![], 1).unwrap();
        let report = net.validate();
        assert_eq!(
            report.violations,
            vec![Violation::Disconnected { components: 2 }]
        );
    }

    #[test]
    fn reports_capacity_order_self_loop_and_imbalance() {
        let arcs = vec![
            Arc::new(0, 1, 3, 2, vec![int(1)]),
            Arc::new(1, 1, 0, 2, vec![int(1)]),
        ];
        let net = Network::new(vec![1, 0], arcs, 1).unwrap();
        let report = net.validate();
        assert!(report.violations.contains(&Violation::CapacityOrder { arc: 0 }));
        assert!(report.violations.contains(&Violation::SelfLoop { arc: 1 }));
        assert!(report.violations.contains(&Violation::Unbalanced { sum: 1 }));
    }

    #[test]
    fn structural_errors() {
        let bad_node = Network::new(vec![0, 0], vec![Arc::new(0, 2, 0, 1, vec![int(1)])], 1);
        assert!(matches!(bad_node, Err(Error::InvalidNetwork(_))));
        let bad_dim = Network::new(vec![0, 0], vec![Arc::new(0, 1, 0, 1, vec![int(1)])], 2);
        assert!(matches!(bad_dim, Err(Error::Dimension { .. })));
    }

    #[test]
    fn fig2_outcome_of_path_flow() {
        let net = instances::fig2();
        // 1 unit on 1->2->3, 4 units on 3->4->5
        let flow = Flow::new(vec![1, 1, 4, 4, 0, 0]);
        flow.check_feasible(&net).unwrap();
        assert_eq!(
            outcome(&net, &flow).unwrap(),
            OutcomeVector::from_integers(&[8, 16, 6])
        );
    }

    #[test]
    fn zero_network_has_zero_outcome() {
        let arcs = vec![Arc::new(0, 1, 0, 0, vec![int(3), int(-2)])];
        let net = Network::new(vec![0, 0], arcs, 2).unwrap();
        let flow = Flow::new(vec![0]);
        assert_eq!(
            outcome(&net, &flow).unwrap(),
            OutcomeVector::from_integers(&[0, 0])
        );
    }

    #[test]
    fn doubling_a_circulation_doubles_the_outcome() {
        let arcs = vec![
            Arc::new(0, 1, 0, 4, vec![rational::ratio(1, 2), int(3)]),
            Arc::new(1, 2, 0, 4, vec![int(2), int(-1)]),
            Arc::new(2, 0, 0, 4, vec![int(1), rational::ratio(5, 4)]),
        ];
        let net = Network::new(vec![0, 0, 0], arcs, 2).unwrap();
        let once = Flow::new(vec![1, 1, 1]);
        let twice = Flow::new(vec![2, 2, 2]);
        assert!(once.is_feasible(&net) && twice.is_feasible(&net));
        let y1 = outcome(&net, &once).unwrap();
        let y2 = outcome(&net, &twice).unwrap();
        let doubled: Vec<Rational> = y1.components().iter().map(|c| c * int(2)).collect();
        assert_eq!(y2.components(), doubled.as_slice());
    }

    #[test]
    fn outcome_dimension_mismatch() {
        let net = instances::fig2();
        assert!(matches!(
            outcome(&net, &Flow::new(vec![0; 3])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn infeasible_flow_is_reported() {
        let net = instances::fig2();
        assert!(Flow::new(vec![0; 6]).check_feasible(&net).is_err());
        assert!(Flow::new(vec![5, 5, 4, 4, 0, 0]).check_feasible(&net).is_err());
    }

    #[test]
    fn dominance_examples() {
        let v = |c: &[i64]| OutcomeVector::from_integers(c);
        assert_eq!(
            dominance(&v(&[12, 12, 6]), &v(&[12, 12, 10])).unwrap(),
            Dominance::LeqDominates
        );
        assert_eq!(
            dominance(&v(&[8, 16, 6]), &v(&[16, 8, 10])).unwrap(),
            Dominance::Incomparable
        );
        assert_eq!(dominance(&v(&[1, 2]), &v(&[1, 2])).unwrap(), Dominance::Equal);
        assert_eq!(
            dominance(&v(&[1, 2]), &v(&[2, 3])).unwrap(),
            Dominance::StrictlyLess
        );
        assert_eq!(
            dominance(&v(&[12, 12, 10]), &v(&[12, 12, 6])).unwrap(),
            Dominance::Dominated
        );
        assert!(dominance(&v(&[1, 2]), &v(&[1, 2, 3])).is_err());
    }
}
