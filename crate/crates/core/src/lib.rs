//! Newton polyhedra, log canonical thresholds and Segre classes of monomial
//! ideals.
//!
//! The Segre class of the subscheme cut out by a monomial ideal in projective
//! space is computed two ways:
//!
//! * exactly, by integrating `n! X_1...X_n / (1 + a.X)^{n+1}` over the Newton
//!   region ([`segre::segre_class`]);
//! * as a lattice sum over points `a / m` selected through log canonical
//!   thresholds of stretched ideals, which converges to the same value as
//!   `m -> infinity` ([`lattice::estimate`]).
//!
//! [`polygamma`] evaluates the polygamma functions that arise when those lattice
//! sums are carried out one coordinate at a time.

pub mod error;
pub mod lattice;
pub mod lct;
mod linalg;
pub mod lp;
pub mod monomial;
pub mod polygamma;
pub mod polyhedron;
pub mod rational;
pub mod segre;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{
    convergence_report, estimate, kernel_term, Arithmetic, ConditionMode, ConvergenceRow, Estimate,
    EstimatorConfig,
};
pub use lct::{diagonal_exit, lct, lct_condition, region_condition, LctValue};
pub use lp::{solve_lp, LpOutcome, LpProblem};
pub use monomial::{ExponentVector, MonomialIdeal, StretchFactors};
pub use polygamma::{bernoulli, polygamma, BernoulliTable, PolygammaOrder};
pub use polyhedron::{in_newton_region, newton_polyhedron, Facet, NewtonPolyhedron, RationalPoint};
pub use rational::Rational;
pub use segre::{cone_decomposition, integrate_piece, segre_class, GeneralizedSimplex, SegreClassResult};
pub use series::TruncatedSeries;
