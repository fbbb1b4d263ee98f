//! ADHM configurations for the plane and its one-point blow-up.

pub mod config;
pub mod orbit;
pub mod polynomial;
pub mod reduction;
pub mod special;

pub use config::{AnyConfig, Config0, Config1};
pub use polynomial::{MonadPolynomial, Monomial};
pub use reduction::{same_points, DUPoint, Reduction, Surface};
pub use special::{SpecialReport, SpecialSubspace};
