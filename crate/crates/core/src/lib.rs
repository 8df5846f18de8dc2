//! Exact-arithmetic toolkit for the boundary geometry of the complex
//! hyperbolic plane.
//!
//! The crate computes Cartan angular invariants of boundary triples, cup
//! squares of the associated bounded cocycle on boundary 5-tuples, and
//! certified lower bounds for the Gromov norm of the cup square — all over
//! the Gaussian rationals wherever the inputs permit, with an explicit
//! floating-point fallback elsewhere.

pub mod cartan;
pub mod certificates;
pub mod cli;
pub mod cochain;
pub mod exact;
pub mod hermitian;
pub mod linalg;
pub mod search;
pub mod simplex;

pub use cartan::{c_phi, cartan, reflection_matrix, CartanValue};
pub use certificates::{
    check_certificate, lower_bound_certificate, read_certificate, write_certificate, Certificate,
    Report,
};
pub use cochain::{cup_sq_full_oracle, cup_sq_reduced, Cochain};
pub use exact::{Angle, ExactError, GaussianRational, Rational, RealValue};
pub use hermitian::{
    BoundaryPoint, CVector, GeometryError, HeisenbergPoint, HermitianModel, Isometry,
};
pub use search::{face_orbits, relation_kernel, search, SearchOptions};
