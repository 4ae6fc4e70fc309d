pub mod bimodule;
pub mod corpus;
pub mod deform;
pub mod error;
pub mod hochschild;
pub mod io;
pub mod linalg;
pub mod lincat;
pub mod scalar;
pub mod sites;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar, ScalarKind};
