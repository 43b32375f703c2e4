//! Enumeration of supported efficient flows for multi-objective integer
//! minimum cost flow problems.
//!
//! A flow is supported efficient if it minimizes a weighted sum of the
//! objectives for some strictly positive weight vector. The pipelines here
//! list every such flow exactly once, in exact rational arithmetic:
//!
//! * [`biobjective`] for two objectives: extreme points by the dichotomic
//!   scheme, then an optimal-flow sweep per edge of the frontier;
//! * [`multiobjective`] for any number: the upper image `conv(Y) + R^d_>=`,
//!   its nondominated facets, and intersections of weakly nondominated
//!   facets that admit a strictly positive weight.
//!
//! [`oracle`] classifies every flow of a small instance by brute force and is
//! the reference the pipelines are tested against.

pub mod aof;
pub mod biobjective;
mod error;
pub mod faces;
pub mod format;
mod hull;
pub mod instances;
mod maxflow;
pub mod multiobjective;
pub mod network;
pub mod oracle;
pub mod rational;
pub mod scalar;
pub mod upper_image;

pub use error::{Error, Result};
pub use faces::{EnumerationOptions, FaceKind, SupportedFlow};
pub use network::{dominance, outcome, Arc, Dominance, Flow, Network, OutcomeVector};
pub use rational::Rational;
pub use scalar::{solve, solve_lexicographic, verify_optimal, WeightVector};
