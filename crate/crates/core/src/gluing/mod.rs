//! Maps between plane and blow-up configuration spaces, the gluing maps of
//! the two-point cover and the retraction homotopies.

pub mod centers;
pub mod classify;
pub mod homotopy;
pub mod maps;

pub use centers::{BlowupCenters, NeighborhoodSpec};
pub use classify::{classify_c_image, lemma_condition2, lemma_condition3, membership, CImage, Piece};
pub use homotopy::{h1, h2, h_xy, Gluing, Homotopy, X2Point};
pub use maps::{
    boxplus0, boxplus0_inverse, boxplus_l, boxplus_l_inverse, direct_image, pullback_blowup, s_class_k1,
    translate_tau,
};
