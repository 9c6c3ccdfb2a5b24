//! Codimension analysis of Bogdanov-Takens and generalized-Hopf bifurcations
//! for planar parameterized vector fields.
//!
//! The crate is organized as a pipeline:
//!
//! * [`algebra`] — exact rational arithmetic, multivariate polynomials,
//!   Sylvester resultants, Sturm real-root isolation, and a configurable
//!   precision dyadic float. Everything downstream leans on it.
//! * [`dynsys`] — planar vector fields with rational-function right-hand
//!   sides, the built-in model catalog, symbolic Jacobians.
//! * [`equilibria`] — equilibrium solving, classification, and hierarchical
//!   parametric analysis (solve for a parameter given the abscissa).
//! * [`snf`] — near-identity transforms, time rescaling, and simplest
//!   normal form coefficient read-off for the double-zero singularity.
//! * [`localbif`] — saddle-node / cusp center-manifold reductions,
//!   BT normal-form coefficients with codimension verdicts, unfolding
//!   parametrizations, and closed-form bifurcation curves.
//! * [`hopf`] — Hopf point location, focus values (numeric engine and
//!   closed forms), transversality, amplitude prediction.
//! * [`codim`] — end-to-end codimension certificates and exclusion scans.
//! * [`sim`] — adaptive integration, limit-cycle detection, homoclinic
//!   splitting, curve tracing, and the figure-reproduction scenarios.

pub mod algebra;
pub mod codim;
pub mod dynsys;
pub mod equilibria;
pub mod error;
pub mod hopf;
pub mod localbif;
pub mod sim;
pub mod snf;

pub use error::Error;

/// Crate version string embedded in every serialized report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
