//! Realizes a projective variety, given by homogeneous equations, as a quiver
//! Grassmannian: a quiver on at most three vertices, a Schurian representation
//! built from the d-uple embedding, and a thin dimension vector. The
//! [`verify`] module checks the result over small prime fields.

pub mod cli;
pub mod construct;
pub mod exactmath;
pub mod polysys;
pub mod verify;
pub mod veronese;

pub use construct::{build_representation, DimensionVector, QuiverRepresentation};
pub use exactmath::{Field, Matrix, Scalar};
pub use polysys::{parse_system, PolynomialSystem};
pub use verify::{verify_correspondence, VerificationReport};
