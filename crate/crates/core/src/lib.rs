//! Exact monad calculus on blow-ups of the plane, gluing homotopies, and
//! Čech spectral sequences for the cohomology of rank-stable instanton
//! moduli spaces.

pub mod acceptance;
pub mod error;
pub mod exact;
pub mod gluing;
pub mod graded;
pub mod io;
pub mod monad;
pub mod spectral;

pub use error::{Error, Result};
pub use exact::GaussianRational;

pub type Rational = num_rational::BigRational;
pub type IntMatrix = exact::Matrix<num_bigint::BigInt>;
pub type MatrixC = exact::Matrix<GaussianRational>;
pub type PlaneConfig = monad::Config0<GaussianRational>;
pub type BlowupConfig = monad::Config1<GaussianRational>;
pub type Config = monad::AnyConfig<GaussianRational>;
