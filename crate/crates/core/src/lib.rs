//! Exact-arithmetic workbench for intersection theory on algebraic surfaces.
//!
//! Everything here is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. The top-level pipeline replays a
//! chain of lattice computations on a ball-quotient surface and its cyclic and
//! involution quotients, and reports each checked step as an exact assertion.
//!
//! Module layout:
//!
//! * [`exact`]: rational scalars, dense rational matrices, exact Gaussian
//!   elimination, perfect-square and two-square decompositions.
//! * [`lattice`]: intersection lattices (basis labels plus a symmetric Gram
//!   matrix) and divisor classes with exact pairing and coordinate recovery.
//! * [`curves`]: curve records (genus, branch multiplicities, node counts) and
//!   the intersection calculus that rebuilds a pairing table from them.
//! * [`search`]: the quadratic Diophantine enumeration of candidate classes
//!   with prescribed canonical degree and self-intersection, and the Reider
//!   case tables used to rule them out.
//! * [`quotient`]: Hirzebruch-Jung resolution chains, cyclic quotient lattice
//!   construction, numerical pullback, canonical classes on resolutions, and
//!   free involution quotients.
//! * [`lefschetz`]: the involution's action matrix on the resolved quotient
//!   lattice, fixed-point constraints (topological and holomorphic), and the
//!   nonexistence certificates (parity of a determinant, modular obstructions).
//! * [`scenario`] / [`report`]: the replay pipeline, its JSON scenario format,
//!   and deterministic pass/fail reports.

#![forbid(unsafe_code)]

pub mod curves;
pub mod exact;
pub mod lattice;
pub mod lefschetz;
pub mod quotient;
pub mod report;
pub mod scenario;
pub mod search;

pub use exact::{Rational, RationalMatrix};
pub use lattice::{DivisorClass, Lattice};
