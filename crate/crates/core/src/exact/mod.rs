//! Exact scalars and linear algebra.

pub mod eigen;
pub mod gaussian;
pub mod matrix;
pub mod quad;
pub mod scalar;
pub mod snf;

pub use eigen::{eig2, lift, Eig2, EigenPair};
pub use gaussian::GaussianRational;
pub use matrix::{mat_arith, MatOp, Matrix};
pub use quad::QuadExt;
pub use scalar::{rat, Field, NormedField, Ring};
pub use snf::{invariant_factors, kernel_rank_over_z, smith_normal_form, KernelInfo, Snf};
