//! Convexity analysis for the planar Euler problem of two fixed centers.
//!
//! The crate is organised around one configuration record, [`ProblemParams`],
//! and a handful of independent evaluators:
//!
//! - [`model`]: the unregularized Hamiltonian, the critical point and the Hill region.
//! - [`elliptic`]: elliptic-coordinate regularization, the tangential Hessian test and
//!   the energy thresholds below which the heavier-body component is convex.
//! - [`levicivita`]: the Levi-Civita regularization and its boundary convexity criterion.
//! - [`fiberwise`]: curvature of Hill boundaries and the equal-mass polar analysis.
//! - [`exactpoly`]: exact rational polynomial arithmetic, Sturm sequences and the
//!   identity suite backing the analytic claims.
//! - [`scan`]: sign scans, implicit-curve tracing and finite-difference checks.
//! - [`curves`]: point series of the level sets and threshold curves, with CSV output.
//! - [`taylor`]: truncated bivariate Taylor arithmetic used for exact derivatives.

pub mod curves;
pub mod elliptic;
pub mod error;
pub mod exactpoly;
pub mod fiberwise;
pub mod levicivita;
pub mod model;
pub mod scan;
pub mod taylor;

pub use error::{Error, Result};
pub use model::{CartesianPhasePoint, Frame, HillComponent, ProblemParams};

/// Whether a convexity statement holds for a given component and energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Convexity {
    Convex,
    NonConvex,
}

impl std::fmt::Display for Convexity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Convexity::Convex => f.write_str("Convex"),
            Convexity::NonConvex => f.write_str("NonConvex"),
        }
    }
}
