//! Graded `Z`-modules built from free rings, monomial ideals and direct sums.

use serde::{Deserialize, Serialize};

use super::ring::{GradedRing, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GradedModuleSpec {
    FreeRing { ring: GradedRing },
    MonomialIdeal { ring: GradedRing, generators: Vec<Monomial> },
    DirectSum { summands: Vec<(GradedModuleSpec, usize)> },
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl GradedModuleSpec {
    pub fn free(ring: GradedRing) -> Self {
        Self::FreeRing { ring }
    }

    /// Ideal generated by the named generators of `ring`.
    pub fn ideal_of_generators(ring: GradedRing, names: &[&str]) -> Self {
        let generators = names
            .iter()
            .map(|n| {
                let mut m = vec![0; ring.len()];
                m[ring.index_of(n).unwrap_or_else(|| panic!("unknown generator {n}"))] = 1;
                m
            })
            .collect();
        Self::MonomialIdeal { ring, generators }
    }

    /// Rank of the degree-`n` piece.
    pub fn hilbert(&self, n: u32) -> u64 {
        match self {
            Self::FreeRing { ring } => ring.hilbert(n),
            Self::MonomialIdeal { ring, generators } => ideal_hilbert(ring, generators, n),
            Self::DirectSum { summands } => summands.iter().map(|(s, k)| s.hilbert(n) * *k as u64).sum(),
        }
    }

    pub fn hilbert_series(&self, max_degree: u32) -> Vec<u64> {
        (0..=max_degree).map(|n| self.hilbert(n)).collect()
    }
}

/// Inclusion–exclusion over the lcms of generator subsets.
fn ideal_hilbert(ring: &GradedRing, gens: &[Monomial], n: u32) -> u64 {
    let mut total: i64 = 0;
    let count = gens.len();
    for mask in 1u64..(1 << count) {
        let mut l = vec![0; ring.len()];
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                l = lcm(&l, g);
            }
        }
        let d = ring.monomial_degree(&l);
        if d > n {
            continue;
        }
        let term = ring.hilbert(n - d) as i64;
        total += if mask.count_ones() % 2 == 1 { term } else { -term };
    }
    total as u64
}
