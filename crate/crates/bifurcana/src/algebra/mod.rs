//! Exact elimination engine: big rationals, multivariate polynomials,
//! Sylvester resultants, Sturm-sequence real-root isolation, and a
//! correctly rounded dyadic float at configurable precision.
//!
//! Every value here is immutable after construction and every operation is
//! pure, so sharing across threads and parallelizing scans over independent
//! inputs is safe.

mod bigfloat;
mod mpoly;
mod quadext;
mod ratnum;
mod resultant;
mod roots;

pub use bigfloat::{BigFloat, DEFAULT_PREC, MIN_PREC};
pub use mpoly::MPoly;
pub use quadext::{quad, QuadExt};
pub use ratnum::{rat, rat_from_decimal_str, rat_pow, RatNum};
pub use resultant::sylvester_resultant;
pub use roots::{real_roots, refine_root, squarefree_part, sturm_real_roots, RootInterval};
