//! Mechanical verification of the exceptional surgeries on `(-2,p,q)`
//! pretzel knots.
//!
//! * [`slopes`]: exact slope arithmetic in `Q ∪ {∞}`.
//! * [`knots`]: pretzel/torus knot catalog and the surgery classifier.
//! * [`invariants`]: signatures, Rasmussen bounds and determinants.
//! * [`moser`]: surgery on torus knots.
//! * [`magic`]: the exceptional filling table of the magic manifold.
//! * [`triangulation`]: ideal triangulations, gluing equations, a Newton
//!   solver, volumes and combinatorial isomorphism.

mod bigint_json;
pub mod error;
pub mod invariants;
pub mod knots;
pub mod magic;
pub mod moser;
pub mod slopes;
pub mod triangulation;

pub use error::ParamError;
pub use slopes::Slope;
