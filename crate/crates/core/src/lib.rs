//! Exact computations around (2g+1)-dimensional linear representations of
//! pure mapping class groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: Gaussian-rational scalars, dense matrices, elimination,
//!   characteristic polynomials and eigenvalue-1 reports.
//! * [`surface`]: surface signatures, the Dehn-twist generating set, the
//!   intersection table and the braid/commute relation catalog, twist words.
//! * [`symplectic`]: the symplectic representation on homology, transvections,
//!   the rotation matrix `G`, semidirect block embedding and duals.
//! * [`cohomology`]: crossed homomorphisms on generators, coboundaries, the
//!   extension `phi_c`, and equivalence up to scalar and coboundary.
//! * [`normal_form`]: the rigidity solvers (key lemma, chain normalization,
//!   extra generators, the 2g-dimensional analogue) and the type A / type B
//!   classifier.
//! * [`selftest`]: the seeded invariant suite shared by the CLI and the
//!   acceptance tests; [`samples`] builds the seeded instances it uses.
//!
//! All arithmetic is exact. Nothing in here uses floating point.

pub mod algebra;
pub mod cohomology;
mod error;
pub mod normal_form;
pub mod samples;
pub mod selftest;
pub mod surface;
pub mod symplectic;

pub use algebra::{EigenReport, Matrix, Poly, Rational, Scalar, Vector};
pub use cohomology::{CrossedHomData, GeneratorRep};
pub use error::{Error, Result};
pub use surface::{GeneratorId, SurfaceSig, TwistWord};
