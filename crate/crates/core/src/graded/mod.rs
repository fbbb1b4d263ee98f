//! Graded coefficient rings, modules and ring maps over the integers.

pub mod map;
pub mod module;
pub mod ring;

pub use map::{kernel_hilbert, RingMap, Sign};
pub use module::GradedModuleSpec;
pub use ring::{Generator, GradedRing, Monomial, Polynomial};
