//! General pipeline for any number of objectives: compute the upper image,
//! enumerate the optimal flows of every nondominated facet, then walk down
//! the faces of the weakly nondominated facets until a face admits a strictly
//! positive weight.
//!
//! A face admits a positive weight iff the sum of the normals of the facets
//! containing it is positive; that sum lies in the relative interior of the
//! face's normal cone, so its optimal face is exactly that face. The walk
//! descends one dimension at a time through intersections with further
//! weakly nondominated facets, which reaches every face of a weakly
//! nondominated facet even when more than `d - dim` facets meet in it.
//!
//! A flow optimal for several processed weights is emitted by the first of
//! them only. Each run drops flows that are optimal for an earlier run whose
//! optimal face shares a vertex with its own (faces of a pointed polyhedron
//! that intersect always share a vertex).

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_traits::Zero;

use crate::biobjective::all_supported_flows_bi_with;
use crate::error::Result;
use crate::faces::{run_jobs, EnumerationOptions, Exclusion, FaceJob, FaceKind, SupportedFlow};
use crate::hull;
use crate::network::Network;
use crate::rational::{self, Rational};
use crate::scalar::WeightVector;
use crate::upper_image::{compute_upper_image, UpperImage};

/// Size of the computed frontier description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub extreme_points: usize,
    /// Facets of the upper image (edges between extremes when `d = 2`).
    pub faces: usize,
}

/// A nonempty face: the hull of `vertices` plus the cone of the unit
/// directions in `directions`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Face {
    vertices: BTreeSet<usize>,
    directions: BTreeSet<usize>,
}

struct Processed {
    weights: WeightVector,
    value: Rational,
    vertices: BTreeSet<usize>,
}

/// Bookkeeping of the face search.
struct FaceContext<'a> {
    image: &'a UpperImage,
    /// Weakly nondominated facets: normal has a zero component.
    weak: Vec<usize>,
    /// Faces already reached.
    closed: BTreeSet<Face>,
    processed: Vec<Processed>,
    jobs: Vec<FaceJob>,
}

impl FaceContext<'_> {
    /// Plans the run for `weights`, dropping flows claimed by earlier runs on
    /// intersecting faces.
    fn schedule(&mut self, weights: WeightVector, face: FaceKind) {
        let (value, minimizers) = self.image.minimizers(&weights);
        let vertices: BTreeSet<usize> = minimizers.iter().copied().collect();
        let exclusions = self
            .processed
            .iter()
            .filter(|p| !p.vertices.is_disjoint(&vertices))
            .map(|p| Exclusion::OptimalFor {
                weights: p.weights.clone(),
                value: p.value.clone(),
            })
            .collect();
        self.jobs.push(FaceJob {
            weights: weights.clone(),
            seed: self.image.vertices[minimizers[0]].flow.clone(),
            exclusions,
            face,
        });
        self.processed.push(Processed {
            weights,
            value,
            vertices,
        });
    }

    fn facet_face(&self, u: usize) -> Face {
        let facet = &self.image.facets[u];
        Face {
            vertices: facet.incident_vertices.iter().copied().collect(),
            directions: zero_components(facet.normal.components()),
        }
    }

    /// Facets containing `face`.
    fn containing(&self, face: &Face) -> Vec<usize> {
        (0..self.image.facets.len())
            .filter(|&u| {
                let f = &self.image.facets[u];
                face.vertices.iter().all(|v| f.incident_vertices.contains(v))
                    && face.directions.iter().all(|&j| f.normal.components()[j].is_zero())
            })
            .collect()
    }

    fn dimension(&self, face: &Face) -> isize {
        let d = self.image.objectives();
        let points: Vec<&[Rational]> = face
            .vertices
            .iter()
            .map(|&v| self.image.vertices[v].outcome.components())
            .collect();
        let directions: Vec<Vec<Rational>> = face
            .directions
            .iter()
            .map(|&j| WeightVector::unit(d, j).components().to_vec())
            .collect();
        hull::affine_dimension(&points, &directions)
    }

    /// Already covered by a processed run: bounded faces lie in an earlier
    /// optimal face iff their vertices do.
    fn covered(&self, face: &Face) -> bool {
        face.directions.is_empty() && self.processed.iter().any(|p| face.vertices.is_subset(&p.vertices))
    }

    /// Walks the faces of the weakly nondominated facets, one dimension per
    /// level, scheduling every face that admits a positive weight and
    /// descending into the others.
    fn consider_subfaces(&mut self) {
        let mut level: Vec<Face> = self.weak.iter().map(|&u| self.facet_face(u)).collect();
        self.closed.extend(level.iter().cloned());
        while !level.is_empty() {
            let mut next = Vec::new();
            for face in level {
                let containing = self.containing(&face);
                let weights = sum_of_normals(self.image, &containing);
                if weights.is_strictly_positive() {
                    if !self.covered(&face) {
                        self.schedule(weights, FaceKind::SubFace(containing));
                    }
                    continue;
                }
                let target = self.dimension(&face) - 1;
                if target < 0 {
                    continue;
                }
                for &u in &self.weak {
                    if containing.contains(&u) {
                        continue;
                    }
                    let facet = &self.image.facets[u];
                    let child = Face {
                        vertices: face
                            .vertices
                            .iter()
                            .copied()
                            .filter(|v| facet.incident_vertices.contains(v))
                            .collect(),
                        directions: face
                            .directions
                            .iter()
                            .copied()
                            .filter(|&j| facet.normal.components()[j].is_zero())
                            .collect(),
                    };
                    if child.vertices.is_empty() || self.closed.contains(&child) {
                        continue;
                    }
                    if self.dimension(&child) == target {
                        self.closed.insert(child.clone());
                        next.push(child);
                    }
                }
            }
            next.sort();
            level = next;
        }
    }
}

fn zero_components(values: &[Rational]) -> BTreeSet<usize> {
    (0..values.len()).filter(|&j| values[j].is_zero()).collect()
}

fn sum_of_normals(image: &UpperImage, facets: &[usize]) -> WeightVector {
    let mut sum = vec![rational::int(0); image.objectives()];
    for &u in facets {
        for (s, c) in sum.iter_mut().zip(image.facets[u].normal.components()) {
            *s += c;
        }
    }
    WeightVector::new(sum)
        .expect("sum of facet normals is a weight")
        .integer_scaled()
}

fn plan(image: &UpperImage) -> Vec<FaceJob> {
    let d = image.objectives();
    if image.vertices.len() == 1 {
        return vec![FaceJob {
            weights: WeightVector::uniform(d),
            seed: image.vertices[0].flow.clone(),
            exclusions: Vec::new(),
            face: FaceKind::Single,
        }];
    }
    let mut ctx = FaceContext {
        image,
        weak: (0..image.facets.len())
            .filter(|&u| !image.facets[u].is_nondominated())
            .collect(),
        closed: BTreeSet::new(),
        processed: Vec::new(),
        jobs: Vec::new(),
    };
    for (u, facet) in image.facets.iter().enumerate() {
        if facet.is_nondominated() {
            ctx.schedule(facet.normal.clone(), FaceKind::Facet(u));
        }
    }
    ctx.consider_subfaces();
    ctx.jobs
}

/// Streams every supported efficient flow exactly once to `sink`, which may
/// stop the run early. Works for any number of objectives.
pub fn all_supported_flows_with(
    network: &Network,
    options: EnumerationOptions,
    sink: &mut dyn FnMut(SupportedFlow) -> ControlFlow<()>,
) -> Result<EnumerationSummary> {
    let image = compute_upper_image(network)?;
    let jobs = plan(&image);
    run_jobs(network, &jobs, options, sink)?;
    Ok(EnumerationSummary {
        extreme_points: image.vertices.len(),
        faces: image.facets.len(),
    })
}

/// Every supported efficient flow, each once, via the upper image.
pub fn all_supported_flows(network: &Network) -> Result<Vec<SupportedFlow>> {
    let mut out = Vec::new();
    all_supported_flows_with(network, EnumerationOptions::default(), &mut |r| {
        out.push(r);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Dispatches on the number of objectives: the bi-objective pipeline for
/// `d = 2`, the upper-image pipeline otherwise.
pub fn supported_flows_with(
    network: &Network,
    options: EnumerationOptions,
    sink: &mut dyn FnMut(SupportedFlow) -> ControlFlow<()>,
) -> Result<EnumerationSummary> {
    if network.objectives() == 2 {
        let extremes = all_supported_flows_bi_with(network, options, sink)?;
        return Ok(EnumerationSummary {
            extreme_points: extremes.len(),
            faces: extremes.len().saturating_sub(1),
        });
    }
    all_supported_flows_with(network, options, sink)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::network::{outcome, OutcomeVector};
    use crate::scalar::verify_optimal;

    #[test]
    fn fig2_emits_exactly_the_supported_outcomes() {
        let net = instances::fig2();
        let flows = all_supported_flows(&net).unwrap();
        let got: BTreeSet<OutcomeVector> = flows.iter().map(|f| f.outcome.clone()).collect();
        let expected: BTreeSet<OutcomeVector> = [
            [8, 16, 6],
            [12, 12, 6],
            [16, 8, 10],
            [13, 11, 7],
            [14, 10, 8],
            [15, 9, 9],
        ]
        .iter()
        .map(|c| OutcomeVector::from_integers(c))
        .collect();
        assert_eq!(got, expected);
        let distinct: BTreeSet<_> = flows.iter().map(|f| f.flow.clone()).collect();
        assert_eq!(distinct.len(), flows.len());
        for f in &flows {
            assert!(f.witness.is_strictly_positive());
            assert!(verify_optimal(&net, &f.witness, &f.flow).unwrap().is_optimal());
            assert_eq!(outcome(&net, &f.flow).unwrap(), f.outcome);
        }
    }

    #[test]
    fn fig2_subface_weights() {
        let image = compute_upper_image(&instances::fig2()).unwrap();
        let jobs = plan(&image);
        let mut weights: Vec<WeightVector> = jobs.iter().map(|j| j.weights.clone()).collect();
        weights.sort();
        // one run per nondominated edge; the vertex y2 is covered by both
        assert_eq!(
            weights,
            vec![
                WeightVector::from_integers(&[1, 1, 1]).unwrap(),
                WeightVector::from_integers(&[1, 2, 1]).unwrap(),
            ]
        );
        assert!(jobs.iter().all(|j| matches!(&j.face, FaceKind::SubFace(t) if t.len() == 2)));
    }

    #[test]
    fn bi_objective_pipelines_agree() {
        for seed in 0..10 {
            let net = instances::random(instances::RandomParams {
                nodes: 5,
                arcs: 8,
                objectives: 2,
                max_cost: 5,
                max_capacity: 3,
                seed,
            });
            let mut a: Vec<_> = all_supported_flows(&net).unwrap().into_iter().map(|f| f.flow).collect();
            let mut b: Vec<_> = crate::biobjective::all_supported_flows_bi(&net)
                .unwrap()
                .into_iter()
                .map(|f| f.flow)
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "seed {seed}");
        }
    }

    #[test]
    fn star_three_objectives() {
        let flows = all_supported_flows(&instances::star(3, 3)).unwrap();
        assert_eq!(flows.len(), 10);
        assert!(flows.iter().all(|f| f.face == FaceKind::Single));
    }
}
