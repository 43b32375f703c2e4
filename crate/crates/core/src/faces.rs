//! Per-face all-optimal-flow runs shared by the bi- and multi-objective
//! pipelines.
//!
//! A pipeline first plans its faces (weight, seed flow, exclusion rules) and
//! then runs the all-optimal-flow enumeration for each. Exclusions depend
//! only on the plan, never on results, so faces can run in parallel and still
//! produce the sequential output.

use std::ops::ControlFlow;
use std::thread;

use crate::aof::enumerate_optimal_flows;
use crate::error::Result;
use crate::network::{outcome, Flow, Network, OutcomeVector};
use crate::rational::Rational;
use crate::scalar::{certify, WeightVector};

/// Which part of the nondominated frontier a flow was enumerated from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FaceKind {
    /// Edge between extreme points `i` and `i + 1` of a bi-objective
    /// extreme list.
    Edge(usize),
    /// Nondominated facet of the upper image.
    Facet(usize),
    /// Intersection of weakly nondominated facets.
    SubFace(Vec<usize>),
    /// The single nondominated point of an instance with one extreme point.
    Single,
}

/// A supported efficient flow with the strictly positive weight for which it
/// is optimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedFlow {
    pub flow: Flow,
    pub outcome: OutcomeVector,
    pub witness: WeightVector,
    pub face: FaceKind,
}

/// Emission filter. A flow is dropped if any exclusion matches its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Exclusion {
    /// `weights . y` equals the optimum of `weights`: already emitted for
    /// that face.
    OptimalFor { weights: WeightVector, value: Rational },
    /// First objective equals the value (the bi-objective sweep rule).
    FirstObjective(Rational),
}

impl Exclusion {
    fn matches(&self, y: &OutcomeVector) -> bool {
        match self {
            Exclusion::OptimalFor { weights, value } => y.weighted(weights.components()) == *value,
            Exclusion::FirstObjective(v) => y.components()[0] == *v,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct FaceJob {
    pub weights: WeightVector,
    pub seed: Flow,
    pub exclusions: Vec<Exclusion>,
    pub face: FaceKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Worker threads for face runs; 1 runs sequentially and streams.
    pub jobs: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { jobs: 1 }
    }
}

fn run_job(
    network: &Network,
    job: &FaceJob,
    sink: &mut dyn FnMut(SupportedFlow) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let seed = certify(network, &job.weights, &job.seed)?;
    let keep = |f: &Flow| match outcome(network, f) {
        Ok(y) => !job.exclusions.iter().any(|e| e.matches(&y)),
        Err(_) => false,
    };
    for flow in enumerate_optimal_flows(network, &job.weights, &seed, keep)? {
        let record = SupportedFlow {
            outcome: outcome(network, &flow)?,
            flow,
            witness: job.weights.clone(),
            face: job.face.clone(),
        };
        if sink(record).is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

fn collect_job(network: &Network, job: &FaceJob) -> Result<Vec<SupportedFlow>> {
    let mut out = Vec::new();
    let _ = run_job(network, job, &mut |r| {
        out.push(r);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub(crate) fn run_jobs(
    network: &Network,
    jobs: &[FaceJob],
    options: EnumerationOptions,
    sink: &mut dyn FnMut(SupportedFlow) -> ControlFlow<()>,
) -> Result<()> {
    if options.jobs <= 1 || jobs.len() <= 1 {
        for job in jobs {
            if run_job(network, job, sink)?.is_break() {
                break;
            }
        }
        return Ok(());
    }

    let workers = options.jobs.min(jobs.len());
    let results: Vec<Result<Vec<SupportedFlow>>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    jobs.iter()
                        .enumerate()
                        .filter(|(i, _)| i % workers == w)
                        .map(|(i, job)| (i, collect_job(network, job)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut slots: Vec<Option<Result<Vec<SupportedFlow>>>> = (0..jobs.len()).map(|_| None).collect();
        for h in handles {
            for (i, r) in h.join().expect("face worker panicked") {
                slots[i] = Some(r);
            }
        }
        slots.into_iter().map(|s| s.expect("every job ran")).collect()
    });
    for r in results {
        for record in r? {
            if sink(record).is_break() {
                return Ok(());
            }
        }
    }
    Ok(())
}
