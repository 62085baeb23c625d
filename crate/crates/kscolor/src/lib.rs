//! Exact-arithmetic workbench for Kochen-Specker colorability questions.
//!
//! The crate decides colorability of finite direction sets on the sphere with
//! exact arithmetic (no floating-point orthogonality tests anywhere), builds
//! dense colorable rational frame sets and totally incompatible perturbations
//! of known uncolorable catalogs, and runs a two-wing deterministic
//! hidden-variable experiment to exhibit finite-precision consistency
//! violations as explicit witness pairs.
//!
//! Modules:
//! - [`exact`]: arithmetic in Q(sqrt 2) and exact 3-vector algebra.
//! - [`geometry`]: projective points, frames, projector distances, direction
//!   sets and their orthogonality structure.
//! - [`solver`]: colorability search, verification, counting, and DIMACS CNF
//!   export.
//! - [`catalog`]: built-in uncolorable direction catalogs and file I/O.
//! - [`rational_gen`]: Pythagorean quadruples, exact rational rotations, and
//!   totally incompatible perturbations.
//! - [`bipartite`]: two-wing deterministic models, exact and finite-precision
//!   consistency checks, witness search.

pub mod bipartite;
pub mod catalog;
pub mod exact;
pub mod geometry;
pub mod rational_gen;
pub mod solver;
