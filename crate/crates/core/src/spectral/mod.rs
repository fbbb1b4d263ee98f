//! Čech spectral sequences of the moduli covers and the closed-form Betti
//! tables they are checked against.

pub mod betti;
pub mod closed;
pub mod cover;
pub mod pages;
pub mod simplex;

pub use betti::{BettiRow, BettiTable};
pub use closed::{base_spec, charge2_spec, closed_form_betti, k_a_spec, k_c_spec};
pub use cover::{build_cover_charge1, build_cover_charge2_q2, Arrow, CoverDescription, Face};
pub use pages::{compute_pages, degree_page, DegreePage, SpectralReport};
pub use simplex::{
    decomposition_check_q2, simplex_assembly, simplex_assembly_betti, ComplexCohomology, DecompositionRow,
    SimplexAssembly,
};
