//! Bi-objective pipeline: extreme supported points by the dichotomic scheme,
//! then one all-optimal-flow sweep per edge between consecutive extremes.

use std::ops::ControlFlow;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::faces::{run_jobs, EnumerationOptions, Exclusion, FaceJob, FaceKind, SupportedFlow};
use crate::network::{outcome, Flow, Network, OutcomeVector};
use crate::scalar::{solve, solve_lexicographic, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremePoint {
    pub outcome: OutcomeVector,
    pub flow: Flow,
}

/// Extreme supported points sorted by increasing first objective (and hence
/// strictly decreasing second objective).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeList {
    pub points: Vec<ExtremePoint>,
}

impl ExtremeList {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Weight vector of the edge between points `i` and `i + 1`.
    pub fn edge_weights(&self, i: usize) -> Result<WeightVector> {
        let a = self.points[i].outcome.components();
        let b = self.points[i + 1].outcome.components();
        let w = vec![&a[1] - &b[1], &b[0] - &a[0]];
        if !(w[0].is_positive() && w[1].is_positive()) {
            return Err(Error::Invariant(format!("edge {i} has a non-positive weight")));
        }
        WeightVector::new(w)
    }
}

fn require_two(network: &Network) -> Result<()> {
    if network.objectives() != 2 {
        return Err(Error::ObjectiveCount {
            expected: 2,
            found: network.objectives(),
        });
    }
    Ok(())
}

/// All vertices of `conv(Y) + R^2_>=`, each with one preimage flow.
pub fn extreme_supported_points(network: &Network) -> Result<ExtremeList> {
    require_two(network)?;
    let point = |flow: Flow| -> Result<ExtremePoint> {
        Ok(ExtremePoint {
            outcome: outcome(network, &flow)?,
            flow,
        })
    };
    let first = point(solve_lexicographic(network, &[0, 1])?.flow)?;
    let last = point(solve_lexicographic(network, &[1, 0])?.flow)?;
    if first.outcome == last.outcome {
        return Ok(ExtremeList { points: vec![first] });
    }

    // done holds a sorted prefix; open pairs are split until no point lies
    // strictly below the segment
    let mut done = vec![first];
    let mut pending = vec![last];
    while let Some(b) = pending.pop() {
        let a = done.last().expect("nonempty");
        let (ya, yb) = (a.outcome.components(), b.outcome.components());
        let weights = WeightVector::new(vec![&ya[1] - &yb[1], &yb[0] - &ya[0]])?;
        let sol = solve(network, &weights)?;
        if sol.objective_value < a.outcome.weighted(weights.components()) {
            pending.push(b);
            pending.push(point(sol.flow)?);
        } else {
            done.push(b);
        }
    }
    Ok(ExtremeList { points: done })
}

fn plan(extremes: &ExtremeList) -> Result<Vec<FaceJob>> {
    if extremes.len() == 1 {
        return Ok(vec![FaceJob {
            weights: WeightVector::uniform(2),
            seed: extremes.points[0].flow.clone(),
            exclusions: Vec::new(),
            face: FaceKind::Single,
        }]);
    }
    (0..extremes.len() - 1)
        .map(|i| {
            let exclusions = if i == 0 {
                Vec::new()
            } else {
                vec![Exclusion::FirstObjective(
                    extremes.points[i].outcome.components()[0].clone(),
                )]
            };
            Ok(FaceJob {
                weights: extremes.edge_weights(i)?,
                seed: extremes.points[i].flow.clone(),
                exclusions,
                face: FaceKind::Edge(i),
            })
        })
        .collect()
}

/// Streams every supported efficient flow of a bi-objective network exactly
/// once to `sink`, which may stop the run early. Returns the extreme points.
pub fn all_supported_flows_bi_with(
    network: &Network,
    options: EnumerationOptions,
    sink: &mut dyn FnMut(SupportedFlow) -> ControlFlow<()>,
) -> Result<ExtremeList> {
    let extremes = extreme_supported_points(network)?;
    let jobs = plan(&extremes)?;
    run_jobs(network, &jobs, options, sink)?;
    Ok(extremes)
}

/// Every supported efficient flow of a bi-objective network, each once.
pub fn all_supported_flows_bi(network: &Network) -> Result<Vec<SupportedFlow>> {
    let mut out = Vec::new();
    all_supported_flows_bi_with(network, EnumerationOptions::default(), &mut |r| {
        out.push(r);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::network::Arc;
    use crate::rational::int;

    fn choice_network() -> Network {
        // one unit over one of three parallel arcs
        let arcs = vec![
            Arc::new(0, 1, 0, 1, vec![int(0), int(4)]),
            Arc::new(0, 1, 0, 1, vec![int(1), int(1)]),
            Arc::new(0, 1, 0, 1, vec![int(4), int(0)]),
        ];
        Network::new(vec![1, -1], arcs, 2).unwrap()
    }

    fn outcomes(list: &ExtremeList) -> Vec<OutcomeVector> {
        list.points.iter().map(|p| p.outcome.clone()).collect()
    }

    #[test]
    fn three_parallel_choices() {
        let net = choice_network();
        let ext = extreme_supported_points(&net).unwrap();
        assert_eq!(
            outcomes(&ext),
            vec![
                OutcomeVector::from_integers(&[0, 4]),
                OutcomeVector::from_integers(&[1, 1]),
                OutcomeVector::from_integers(&[4, 0]),
            ]
        );
        assert_eq!(ext.edge_weights(0).unwrap(), WeightVector::from_integers(&[3, 1]).unwrap());
        let flows = all_supported_flows_bi(&net).unwrap();
        assert_eq!(flows.len(), 3);
        assert_eq!(flows[1].face, FaceKind::Edge(0));
        assert_eq!(flows[2].face, FaceKind::Edge(1));
    }

    #[test]
    fn unique_flow() {
        let arcs = vec![Arc::new(0, 1, 2, 2, vec![int(1), int(3)])];
        let net = Network::new(vec![2, -2], arcs, 2).unwrap();
        let ext = extreme_supported_points(&net).unwrap();
        assert_eq!(outcomes(&ext), vec![OutcomeVector::from_integers(&[2, 6])]);
        let flows = all_supported_flows_bi(&net).unwrap();
        assert_eq!(flows.len(), 1);
        assert_eq!(flows[0].flow, Flow::new(vec![2]));
        assert_eq!(flows[0].face, FaceKind::Single);
    }

    #[test]
    fn star_collapses_to_one_point() {
        let ext = extreme_supported_points(&instances::star(2, 2)).unwrap();
        assert_eq!(outcomes(&ext), vec![OutcomeVector::from_integers(&[4, 4])]);
        let flows = all_supported_flows_bi(&instances::star(3, 2)).unwrap();
        assert_eq!(flows.len(), 10);
        assert!(flows
            .iter()
            .all(|f| f.outcome == OutcomeVector::from_integers(&[6, 6])));
    }

    #[test]
    fn rejects_three_objectives() {
        assert!(matches!(
            extreme_supported_points(&instances::fig2()),
            Err(Error::ObjectiveCount { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn parallel_run_matches_sequential() {
        let net = instances::random(instances::RandomParams {
            nodes: 6,
            arcs: 10,
            objectives: 2,
            max_cost: 5,
            max_capacity: 3,
            seed: 3,
        });
        let seq = all_supported_flows_bi(&net).unwrap();
        let mut par = Vec::new();
        all_supported_flows_bi_with(&net, EnumerationOptions { jobs: 4 }, &mut |r| {
            par.push(r);
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(seq, par);
    }
}
