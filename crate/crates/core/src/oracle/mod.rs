//! Ground truth for small instances: list every feasible flow and classify
//! each distinct outcome as supported, weakly supported only, unsupported or
//! dominated.
//!
//! A nondominated outcome `y` is classified by the exact LP
//! `max t  s.t.  sum(lambda) = 1, lambda_i >= t, lambda . (y' - y) >= 0`
//! over the other nondominated outcomes `y'` (dominated outcomes cannot
//! tighten it for non-negative weights). An optimum `t > 0` means supported,
//! `t = 0` weakly supported only, infeasibility unsupported.

mod enumerate;
mod simplex;

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::Result;
use crate::network::{dominance, outcome, Flow, Network, OutcomeVector};
use crate::rational::{int, Rational};
use crate::scalar::WeightVector;

pub use enumerate::enumerate_all_flows;
use simplex::{maximize, Constraint, LpResult, Relation};

/// Default bound on the number of flows the oracle will enumerate.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Supported,
    WeaklySupportedOnly,
    Unsupported,
    Dominated,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Supported => "supported",
            Label::WeaklySupportedOnly => "weakly-supported-only",
            Label::Unsupported => "unsupported",
            Label::Dominated => "dominated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Weight, summing to 1, for which the outcome is minimal.
    Weight(WeightVector),
    DominatedBy(OutcomeVector),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedOutcome {
    pub outcome: OutcomeVector,
    pub label: Label,
    pub witness: Witness,
    /// Indices into [`Classification::flows`].
    pub flows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    flows: Vec<Flow>,
    /// Sorted by outcome.
    outcomes: Vec<ClassifiedOutcome>,
    flow_outcome: Vec<usize>,
}

impl Classification {
    pub fn flows(&self) -> &[Flow] {
        &self.flows
    }

    pub fn outcomes(&self) -> &[ClassifiedOutcome] {
        &self.outcomes
    }

    pub fn flow_label(&self, flow: usize) -> Label {
        self.outcomes[self.flow_outcome[flow]].label
    }

    pub fn outcomes_labelled(&self, label: Label) -> Vec<&OutcomeVector> {
        self.outcomes
            .iter()
            .filter(|c| c.label == label)
            .map(|c| &c.outcome)
            .collect()
    }

    /// Flows with the given label, in lexicographic order.
    pub fn flows_labelled(&self, label: Label) -> Vec<&Flow> {
        (0..self.flows.len())
            .filter(|&f| self.flow_label(f) == label)
            .map(|f| &self.flows[f])
            .collect()
    }

    pub fn count(&self, label: Label) -> usize {
        self.outcomes.iter().filter(|c| c.label == label).count()
    }
}

fn support_lp(y: &OutcomeVector, others: &[&OutcomeVector]) -> (Label, Witness) {
    let d = y.dim();
    // variables lambda_1..lambda_d, t
    let mut constraints = Vec::new();
    for i in 0..d {
        let mut coeffs = vec![int(0); d + 1];
        coeffs[i] = int(1);
        coeffs[d] = int(-1);
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs: int(0),
        });
    }
    let mut sum = vec![int(1); d + 1];
    sum[d] = int(0);
    constraints.push(Constraint {
        coeffs: sum,
        relation: Relation::Eq,
        rhs: int(1),
    });
    for other in others {
        let mut coeffs: Vec<Rational> = other
            .components()
            .iter()
            .zip(y.components())
            .map(|(a, b)| a - b)
            .collect();
        coeffs.push(int(0));
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs: int(0),
        });
    }
    let mut objective = vec![int(0); d + 1];
    objective[d] = int(1);
    match maximize(&objective, &constraints) {
        LpResult::Optimal { value, x } => {
            let weight = WeightVector::new(x[..d].to_vec()).expect("weights sum to one");
            let label = if value.is_positive() {
                Label::Supported
            } else {
                Label::WeaklySupportedOnly
            };
            (label, Witness::Weight(weight))
        }
        LpResult::Infeasible => (Label::Unsupported, Witness::None),
        LpResult::Unbounded => unreachable!("t is bounded by the weights"),
    }
}

fn group_by_outcome(network: &Network, flows: &[Flow]) -> Result<BTreeMap<OutcomeVector, Vec<usize>>> {
    let mut groups: BTreeMap<OutcomeVector, Vec<usize>> = BTreeMap::new();
    for (i, f) in flows.iter().enumerate() {
        groups.entry(outcome(network, f)?).or_default().push(i);
    }
    Ok(groups)
}

/// Classifies every feasible flow of `network`. Fails if it has more than
/// `cap` flows.
pub fn classify(network: &Network, cap: usize) -> Result<Classification> {
    let flows = enumerate_all_flows(network, cap)?;
    let groups = group_by_outcome(network, &flows)?;
    let distinct: Vec<OutcomeVector> = groups.keys().cloned().collect();

    let mut dominated_by: Vec<Option<usize>> = vec![None; distinct.len()];
    for (i, y) in distinct.iter().enumerate() {
        for (j, other) in distinct.iter().enumerate() {
            if i != j && dominance(other, y)?.dominates() {
                dominated_by[i] = Some(j);
                break;
            }
        }
    }
    let nondominated: Vec<usize> = (0..distinct.len()).filter(|&i| dominated_by[i].is_none()).collect();

    let mut flow_outcome = vec![0; flows.len()];
    let mut outcomes = Vec::with_capacity(distinct.len());
    for (i, (y, members)) in groups.into_iter().enumerate() {
        for &f in &members {
            flow_outcome[f] = i;
        }
        let (label, witness) = match dominated_by[i] {
            Some(j) => (Label::Dominated, Witness::DominatedBy(distinct[j].clone())),
            None => {
                let others: Vec<&OutcomeVector> = nondominated
                    .iter()
                    .filter(|&&k| k != i)
                    .map(|&k| &distinct[k])
                    .collect();
                support_lp(&y, &others)
            }
        };
        outcomes.push(ClassifiedOutcome {
            outcome: y,
            label,
            witness,
            flows: members,
        });
    }
    Ok(Classification {
        flows,
        outcomes,
        flow_outcome,
    })
}

/// Every feasible flow minimizing `weights . C f`, by brute force.
pub fn weighted_minimizers(network: &Network, weights: &WeightVector, cap: usize) -> Result<Vec<Flow>> {
    let flows = enumerate_all_flows(network, cap)?;
    let values: Vec<Rational> = flows
        .iter()
        .map(|f| Ok(outcome(network, f)?.weighted(weights.components())))
        .collect::<Result<_>>()?;
    let Some(min) = values.iter().min().cloned() else {
        return Ok(Vec::new());
    };
    Ok(flows
        .into_iter()
        .zip(values)
        .filter(|(_, v)| *v == min)
        .map(|(f, _)| f)
        .collect())
}

/// Witness weights of supported outcomes are strictly positive and the
/// outcome is minimal for them among all outcomes.
pub fn witness_is_valid(classification: &Classification, index: usize) -> bool {
    let c = &classification.outcomes[index];
    let Witness::Weight(w) = &c.witness else {
        return !matches!(c.label, Label::Supported | Label::WeaklySupportedOnly);
    };
    if c.label == Label::Supported && !w.is_strictly_positive() {
        return false;
    }
    let own = c.outcome.weighted(w.components());
    classification
        .outcomes
        .iter()
        .all(|o| !(o.outcome.weighted(w.components()) - &own).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::network::Arc;

    fn ints(raw: &[[i64; 3]]) -> Vec<OutcomeVector> {
        raw.iter().map(|c| OutcomeVector::from_integers(c)).collect()
    }

    fn owned(v: Vec<&OutcomeVector>) -> Vec<OutcomeVector> {
        v.into_iter().cloned().collect()
    }

    #[test]
    fn fig2_classification() {
        let c = classify(&instances::fig2(), DEFAULT_CAP).unwrap();
        assert_eq!(
            owned(c.outcomes_labelled(Label::Supported)),
            ints(&[[8, 16, 6], [12, 12, 6], [13, 11, 7], [14, 10, 8], [15, 9, 9], [16, 8, 10]])
        );
        assert_eq!(
            owned(c.outcomes_labelled(Label::WeaklySupportedOnly)),
            ints(&[[9, 15, 7], [10, 14, 8], [11, 13, 9]])
        );
        assert_eq!(owned(c.outcomes_labelled(Label::Dominated)), ints(&[[12, 12, 10]]));
        assert!(c.outcomes_labelled(Label::Unsupported).is_empty());
        for i in 0..c.outcomes().len() {
            assert!(witness_is_valid(&c, i));
        }
    }

    #[test]
    fn single_outcome_is_supported() {
        let arcs = vec![Arc::new(0, 1, 1, 1, vec![int(2), int(5)])];
        let net = Network::new(vec![1, -1], arcs, 2).unwrap();
        let c = classify(&net, 10).unwrap();
        assert_eq!(c.outcomes().len(), 1);
        assert_eq!(c.outcomes()[0].label, Label::Supported);
        assert!(matches!(&c.outcomes()[0].witness, Witness::Weight(w) if w.is_strictly_positive()));
    }

    #[test]
    fn unsupported_point_in_the_interior() {
        // outcomes (0,4), (3,3), (4,0): (3,3) lies above the segment
        let arcs = vec![
            Arc::new(0, 1, 0, 1, vec![int(0), int(4)]),
            Arc::new(0, 1, 0, 1, vec![int(3), int(3)]),
            Arc::new(0, 1, 0, 1, vec![int(4), int(0)]),
        ];
        let net = Network::new(vec![1, -1], arcs, 2).unwrap();
        let c = classify(&net, 10).unwrap();
        assert_eq!(c.count(Label::Supported), 2);
        assert_eq!(c.count(Label::Unsupported), 1);
        assert_eq!(
            c.outcomes_labelled(Label::Unsupported),
            vec![&OutcomeVector::from_integers(&[3, 3])]
        );
    }

    #[test]
    fn brute_force_minimizers_on_star() {
        let net = instances::star(3, 2);
        let w = WeightVector::from_integers(&[1, 2]).unwrap();
        assert_eq!(weighted_minimizers(&net, &w, 100).unwrap().len(), 10);
    }
}
