//! Exact construction and certification of unitary matrices and tight frames.
//!
//! All matrix entries live in [`RadicalScalar`], the ring of finite sums of
//! rational multiples of square roots, so orthogonality, unitarity and
//! tightness are decided exactly rather than up to a tolerance.

pub mod errata;
pub mod error;
pub mod frames;
pub mod hyperplane;
pub mod io;
pub mod matrix;
pub mod paving;
pub mod request;
pub mod scalar;
pub mod unitary;
pub mod verify;

pub use error::{Error, Result};
pub use io::Format;
pub use matrix::ExactMatrix;
pub use request::{ConstructionRequest, Family};
pub use scalar::{rational, RadicalScalar, Rational};
pub use verify::{Property, VerifyReport, Witness};
