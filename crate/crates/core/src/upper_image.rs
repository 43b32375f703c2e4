//! The upper image `P = conv(Y) + R^d_>=` of a network's outcome set:
//! vertices with preimage flows, lower facets with weight vectors, and facet
//! adjacency.
//!
//! Construction is an outer approximation in outcome space. It starts from
//! the `d` cyclic lexicographic optima, computes the exact facets of the
//! current points plus the orthant, and solves the weighted-sum problem for
//! every facet normal. A strictly better optimum adds a point. When no facet
//! improves, the polyhedron equals `P`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::hull::{self, FacetInequality};
use crate::network::{outcome, Flow, Network, OutcomeVector};
use crate::rational::{self, Rational};
use crate::scalar::{solve, solve_lexicographic, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub outcome: OutcomeVector,
    pub flow: Flow,
}

/// Lower facet `normal . y >= offset` of the upper image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Primitive non-negative integer vector.
    pub normal: WeightVector,
    /// `min { normal . y : y in P }`.
    pub offset: Rational,
    /// Indices into [`UpperImage::vertices`] of the vertices on the facet.
    pub incident_vertices: Vec<usize>,
}

impl Facet {
    /// Normal is componentwise positive: every point on the facet is
    /// supported nondominated.
    pub fn is_nondominated(&self) -> bool {
        self.normal.is_strictly_positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperImage {
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Facet>,
    objectives: usize,
}

impl UpperImage {
    pub fn objectives(&self) -> usize {
        self.objectives
    }

    /// Whether `y` satisfies every facet inequality.
    pub fn contains(&self, y: &OutcomeVector) -> bool {
        self.facets
            .iter()
            .all(|f| y.weighted(f.normal.components()) >= f.offset)
    }

    /// Vertices lying on every facet in `facets`.
    pub fn common_vertices(&self, facets: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = facets.split_first() else {
            return (0..self.vertices.len()).collect();
        };
        self.facets[first]
            .incident_vertices
            .iter()
            .copied()
            .filter(|v| rest.iter().all(|&f| self.facets[f].incident_vertices.contains(v)))
            .collect()
    }

    /// Dimension of the face `F_{u_1} ∩ ... ∩ F_{u_k}`, or -1 if empty. The
    /// face is the hull of the common vertices plus every orthant direction
    /// `e_j` with `normal_j = 0` on all listed facets.
    pub fn face_dimension(&self, facets: &[usize]) -> isize {
        let common = self.common_vertices(facets);
        let points: Vec<&[Rational]> = common
            .iter()
            .map(|&v| self.vertices[v].outcome.components())
            .collect();
        let directions: Vec<Vec<Rational>> = (0..self.objectives)
            .filter(|&j| {
                facets
                    .iter()
                    .all(|&f| num_traits::Zero::is_zero(&self.facets[f].normal.components()[j]))
            })
            .map(|j| WeightVector::unit(self.objectives, j).components().to_vec())
            .collect();
        hull::affine_dimension(&points, &directions)
    }

    /// Vertices minimizing `weights . y` over `P`, and the minimum.
    pub fn minimizers(&self, weights: &WeightVector) -> (Rational, Vec<usize>) {
        let values: Vec<Rational> = self
            .vertices
            .iter()
            .map(|v| v.outcome.weighted(weights.components()))
            .collect();
        let min = values.iter().min().expect("upper image has a vertex").clone();
        let idx = (0..values.len()).filter(|&i| values[i] == min).collect();
        (min, idx)
    }
}

fn cyclic_order(d: usize, start: usize) -> Vec<usize> {
    (0..d).map(|i| (start + i) % d).collect()
}

/// Vertices and lower facets of the upper image, in exact arithmetic.
pub fn compute_upper_image(network: &Network) -> Result<UpperImage> {
    let d = network.objectives();
    let mut points: BTreeMap<OutcomeVector, Flow> = BTreeMap::new();
    for start in 0..d {
        let sol = solve_lexicographic(network, &cyclic_order(d, start))?;
        let y = outcome(network, &sol.flow)?;
        points.entry(y).or_insert(sol.flow);
    }

    let mut verified: BTreeSet<(Vec<Rational>, Rational)> = BTreeSet::new();
    let facets = loop {
        let coords: Vec<Vec<Rational>> = points.keys().map(|y| y.components().to_vec()).collect();
        let facets = hull::lower_facets(&coords, d);
        let mut found = Vec::new();
        for f in &facets {
            let key = (f.normal.clone(), f.offset.clone());
            if verified.contains(&key) {
                continue;
            }
            let weights = WeightVector::new(f.normal.clone())?;
            let sol = solve(network, &weights)?;
            if sol.objective_value < f.offset {
                found.push((outcome(network, &sol.flow)?, sol.flow));
            } else {
                verified.insert(key);
            }
        }
        if found.is_empty() {
            break facets;
        }
        for (y, flow) in found {
            points.entry(y).or_insert(flow);
        }
    };

    Ok(assemble(points, facets, d))
}

fn assemble(points: BTreeMap<OutcomeVector, Flow>, facets: Vec<FacetInequality>, d: usize) -> UpperImage {
    let tight = |f: &FacetInequality, y: &OutcomeVector| rational::dot(&f.normal, y.components()) == f.offset;
    let vertices: Vec<Vertex> = points
        .into_iter()
        .filter(|(y, _)| {
            let normals: Vec<Vec<Rational>> = facets
                .iter()
                .filter(|f| tight(f, y))
                .map(|f| f.normal.clone())
                .collect();
            hull::rank(&normals) == d
        })
        .map(|(outcome, flow)| Vertex { outcome, flow })
        .collect();
    let facets = facets
        .into_iter()
        .map(|f| {
            let incident_vertices = (0..vertices.len())
                .filter(|&v| tight(&f, &vertices[v].outcome))
                .collect();
            Facet {
                normal: WeightVector::new(f.normal).expect("facet normals are nonzero and non-negative"),
                offset: f.offset,
                incident_vertices,
            }
        })
        .collect();
    UpperImage {
        vertices,
        facets,
        objectives: d,
    }
}

/// `Q_u` for every facet: facets whose intersection with `F_u` has dimension
/// `d - 2`.
pub fn facet_adjacency(image: &UpperImage) -> Vec<Vec<usize>> {
    let k = image.facets.len();
    let target = image.objectives() as isize - 2;
    let mut adjacency = vec![Vec::new(); k];
    for u in 0..k {
        for v in (u + 1)..k {
            if image.face_dimension(&[u, v]) == target {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    adjacency
}
