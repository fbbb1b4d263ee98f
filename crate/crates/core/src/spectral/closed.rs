//! Closed-form Betti tables of the charge-one and charge-two moduli spaces.

use crate::error::{Error, Result};
use crate::graded::{GradedModuleSpec, GradedRing};

use super::betti::BettiTable;

/// `H*(BU(2)) = Z[a₁, a₂]`, degrees 2 and 4.
pub fn base_spec() -> GradedModuleSpec {
    GradedModuleSpec::free(GradedRing::new(&[("a1", 2), ("a2", 4)]).expect("valid ring"))
}

/// `K_A = (k₁, k₂) ⊂ Z[a₁, k₁, a₂, k₂]`.
pub fn k_a_spec() -> GradedModuleSpec {
    let ring = GradedRing::new(&[("a1", 2), ("k1", 2), ("a2", 4), ("k2", 4)]).expect("valid ring");
    GradedModuleSpec::ideal_of_generators(ring, &["k1", "k2"])
}

/// `K_C = (x₁x₂) ⊂ Z[x₁, x₂, x₃, x₄]`.
pub fn k_c_spec() -> GradedModuleSpec {
    let ring = GradedRing::uniform("x", 4, 2).expect("valid ring");
    GradedModuleSpec::MonomialIdeal { ring, generators: vec![vec![1, 1, 0, 0]] }
}

/// `Z[a₁, a₂] ⊕ K_A^q ⊕ K_C^{q(q−1)/2}`.
pub fn charge2_spec(q: usize) -> GradedModuleSpec {
    GradedModuleSpec::DirectSum { summands: vec![(base_spec(), 1), (k_a_spec(), q), (k_c_spec(), q * q.saturating_sub(1) / 2)] }
}

/// Poincaré series of `BU(1) × ⋁^q BU(1)` by Künneth and wedge counting.
fn charge1_series(q: usize, max_degree: u32) -> Vec<u64> {
    let n = max_degree as usize + 1;
    let bu1: Vec<u64> = (0..n).map(|d| u64::from(d % 2 == 0)).collect();
    let wedge: Vec<u64> = (0..n).map(|d| if d == 0 { 1 } else { q as u64 * bu1[d] }).collect();
    (0..n).map(|d| (0..=d).map(|i| bu1[i] * wedge[d - i]).sum()).collect()
}

pub fn closed_form_betti(charge: u32, q: usize, max_degree: u32) -> Result<BettiTable> {
    let ranks = match charge {
        1 => charge1_series(q, max_degree),
        2 => charge2_spec(q).hilbert_series(max_degree),
        _ => return Err(Error::ChargeTooLarge(charge as usize)),
    };
    Ok(BettiTable::from_ranks(&ranks))
}
