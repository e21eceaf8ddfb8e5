//! Exact symbolic calculus for pseudodifferential symbols on the circle.
//!
//! The engine works over the Gaussian rationals with a fixed indeterminate
//! registry, so every identity it checks is a literal polynomial identity:
//! universally quantified statements about smooth functions are decided by
//! evaluating on formal Fourier modes. On top of the symbol algebra it builds
//! the first-cohomology cocycles of the vector-field action, re-derives the
//! integrability obstructions for deformations of the canonical embedding
//! `f∂ -> fξ`, and computes the induced deformation of the Virasoro central
//! charge.

pub mod charges;
pub mod circle;
pub mod cohomology;
pub mod deformations;
pub mod error;
pub mod maps;
pub mod psdo;
pub mod scalars;
pub mod verify;

pub use charges::ChargeReport;
pub use circle::{
    lie_derive, CircleFunction, ModeVector, SemidirectElement, TensorDensity, VectorField,
};
pub use cohomology::Cochain1;
pub use deformations::{DeformAnsatz, ObstructionReport};
pub use error::{Error, Result};
pub use psdo::{Floor, Symbol, DEFAULT_FLOOR};
pub use scalars::{hbinom, GaussianRational, Monomial, PolyScalar, Var};
pub use verify::{run_suites, CheckResult, Status, VerifyConfig};
