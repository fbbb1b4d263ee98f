//! Charge-two Betti numbers for `q` blow-ups from the filtration of the
//! `(q−1)`-simplex by midpoints `Δ₀ ⊂ Δ₁ ⊂ Δ`.
//!
//! The `E₁` row splits into three complexes: pairs `K_ij` with no
//! differential, vertex stars `H⁰(∂Δ_{1l}) → H¹(Δ_{1l}, ∂Δ_{1l})` tensored
//! with `K_l`, and `H⁰(Δ₀) → H¹(Δ₁, Δ₀) → H¹(Δ₁)` tensored with the base
//! ring. Each relative group is presented as the cokernel of an explicit
//! simplicial coboundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{invariant_factors, kernel_rank_over_z, smith_normal_form, Matrix};
use crate::graded::{kernel_hilbert, RingMap};

use super::betti::{BettiRow, BettiTable};
use super::closed::base_spec;
use super::cover::{build_cover_charge2_q2, CoverDescription};
use super::pages::compute_pages;

type IntMatrix = Matrix<BigInt>;

fn integer_inverse(u: &IntMatrix) -> IntMatrix {
    let inv = u.map(|x| BigRational::from_integer(x.clone())).inverse().expect("unimodular");
    inv.map(|x| {
        assert!(x.denom().is_one(), "inverse of a unimodular matrix is integral");
        x.numer().clone()
    })
}

/// `Zᵐ / im M` as a free group: projection `P` and section `S` with
/// `P·S = 1`, plus any torsion the cokernel carries.
struct Cokernel {
    proj: IntMatrix,
    section: IntMatrix,
    torsion: Vec<BigInt>,
}

fn cokernel(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let u = snf.u.clone().expect("transforms requested");
    let (rows, r) = (m.rows(), snf.rank);
    let ui = integer_inverse(&u);
    Cokernel {
        proj: u.block(r, 0, rows - r, rows),
        section: ui.block(0, r, rows, rows - r),
        torsion: snf.torsion(),
    }
}

/// Cohomology ranks and torsion of a cochain complex given by its maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCohomology {
    pub ranks: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

fn cohomology(dims: &[usize], maps: &[IntMatrix]) -> ComplexCohomology {
    let snfs: Vec<_> = maps.iter().map(invariant_factors).collect();
    let n = dims.len();
    let ranks = (0..n)
        .map(|p| {
            let out = if p < maps.len() { snfs[p].rank } else { 0 };
            let inn = if p > 0 { snfs[p - 1].rank } else { 0 };
            dims[p] - out - inn
        })
        .collect();
    let torsion = (0..n).map(|p| if p == 0 { vec![] } else { snfs[p - 1].torsion() }).collect();
    ComplexCohomology { ranks, torsion }
}

/// The midpoint-subdivided 1-skeleton of the `(q−1)`-simplex: vertices
/// `v_i` then midpoints `e_ij`, edges `[v_i, e_ij]` oriented towards `e_ij`.
struct Skeleton {
    q: usize,
    pairs: Vec<(usize, usize)>,
    /// `(vertex, pair index)` for each half-edge.
    edges: Vec<(usize, usize)>,
}

impl Skeleton {
    fn new(q: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..q).flat_map(|i| (i + 1..q).map(move |j| (i, j))).collect();
        let edges = pairs.iter().enumerate().flat_map(|(k, &(i, j))| [(i, k), (j, k)]).collect();
        Self { q, pairs, edges }
    }

    /// Coboundary on the vertices `v_i` (columns `0..q`) and midpoints
    /// (columns `q..`).
    fn coboundary(&self) -> IntMatrix {
        let mut d = Matrix::zeros(self.edges.len(), self.q + self.pairs.len());
        for (h, &(v, k)) in self.edges.iter().enumerate() {
            d[(h, v)] = -BigInt::one();
            d[(h, self.q + k)] = BigInt::one();
        }
        d
    }

    /// `H⁰(Δ₀) → H¹(Δ₁, Δ₀) → H¹(Δ₁)`.
    fn bottom_complex(&self) -> (Vec<usize>, Vec<IntMatrix>, Vec<Vec<BigInt>>) {
        let full = self.coboundary();
        let rel = full.block(0, 0, full.rows(), self.q);
        let lift = full.block(0, self.q, full.rows(), self.pairs.len());
        let q1 = cokernel(&rel);
        let q2 = cokernel(&full);
        let d0 = q1.proj.mul(&lift);
        let d1 = q2.proj.mul(&q1.section);
        let dims = vec![self.pairs.len(), q1.proj.rows(), q2.proj.rows()];
        (dims, vec![d0, d1], vec![vec![], q1.torsion, q2.torsion])
    }

    /// `⊕_{i<j} H⁰(e_ij) ⊗ (K_i ⊕ K_j) → ⊕_l H¹(Δ_{1l}, ∂Δ_{1l}) ⊗ K_l`,
    /// one copy of each `K`.
    fn middle_complex(&self) -> (Vec<usize>, Vec<IntMatrix>, Vec<Vec<BigInt>>) {
        let mut blocks = Vec::new();
        let mut torsion = Vec::new();
        for l in 0..self.q {
            // star of v_l: its half-edges, relative to the midpoints
            let star: Vec<usize> = (0..self.edges.len()).filter(|&h| self.edges[h].0 == l).collect();
            let mut rel = Matrix::zeros(star.len(), 1);
            let mut lift = Matrix::zeros(star.len(), self.edges.len());
            for (r, &h) in star.iter().enumerate() {
                rel[(r, 0)] = -BigInt::one();
                lift[(r, h)] = BigInt::one();
            }
            let c = cokernel(&rel);
            torsion.extend(c.torsion.clone());
            blocks.push(c.proj.mul(&lift));
        }
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        let d0 = Matrix::vstack(&refs).expect("same column count");
        let dims = vec![self.edges.len(), d0.rows()];
        (dims, vec![d0], vec![vec![], torsion])
    }
}

/// Coefficient ranks `K_ij`, `K_l`, `H*(M₂(X₀))` in degree `n`, each computed
/// as a kernel of the charge-two restriction maps.
struct Coefficients {
    pair_maps: Vec<RingMap>,
    vertex_map: RingMap,
}

impl Coefficients {
    fn new() -> Result<Self> {
        let cover = build_cover_charge2_q2()?;
        Ok(Self {
            pair_maps: vec![arrow(&cover, "N_2", "N_L"), arrow(&cover, "N_2", "N_R")],
            vertex_map: arrow(&cover, "A_L", "A_0"),
        })
    }

    fn pair(&self, n: u32) -> Result<u64> {
        Ok(kernel_hilbert(&self.pair_maps, n)? as u64)
    }

    fn vertex(&self, n: u32) -> Result<u64> {
        Ok(kernel_hilbert(std::slice::from_ref(&self.vertex_map), n)? as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexAssembly {
    pub betti: BettiTable,
    /// Cohomology of the three split complexes before tensoring.
    pub middle: ComplexCohomology,
    pub bottom: ComplexCohomology,
}

impl SimplexAssembly {
    /// The bottom complex is exact in the middle.
    pub fn bottom_exact_in_middle(&self) -> bool {
        self.bottom.ranks[1] == 0 && self.bottom.torsion[1].is_empty()
    }

    /// The star map is onto.
    pub fn middle_surjective(&self) -> bool {
        self.middle.ranks[1] == 0 && self.middle.torsion[1].is_empty()
    }

    /// `d₁` onto `H¹(Δ₁) ⊗ K` is onto.
    pub fn top_surjective(&self) -> bool {
        self.bottom.ranks[2] == 0 && self.bottom.torsion[2].is_empty()
    }
}

fn with_quotient_torsion(mut c: ComplexCohomology, quotient_torsion: Vec<Vec<BigInt>>) -> ComplexCohomology {
    for (t, q) in c.torsion.iter_mut().zip(quotient_torsion) {
        t.extend(q);
    }
    c
}

pub fn simplex_assembly(q: usize, max_degree: u32) -> Result<SimplexAssembly> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("simplex assembly needs q >= 2, got {q}")));
    }
    let sk = Skeleton::new(q);
    let (bd, bm, bt) = sk.bottom_complex();
    let bottom = with_quotient_torsion(cohomology(&bd, &bm), bt);
    let (md, mm, mt) = sk.middle_complex();
    let middle = with_quotient_torsion(cohomology(&md, &mm), mt);
    let coeff = Coefficients::new()?;
    let base = base_spec();
    let mut rows: Vec<BettiRow> = (0..=max_degree).map(|d| BettiRow { degree: d, rank: 0, torsion: vec![] }).collect();
    for n in 0..=max_degree {
        let k_pair = coeff.pair(n)?;
        let k_vertex = coeff.vertex(n)?;
        let k_base = base.hilbert(n);
        let parts: [(&ComplexCohomology, u64); 2] = [(&middle, k_vertex), (&bottom, k_base)];
        let mut contributions: Vec<(u32, u64, Vec<BigInt>)> = vec![(0, sk.pairs.len() as u64 * k_pair, vec![])];
        for (c, k) in parts {
            for (p, (&r, t)) in c.ranks.iter().zip(&c.torsion).enumerate() {
                let tors = if k == 0 { vec![] } else { t.iter().cycle().take(t.len() * k as usize).cloned().collect() };
                contributions.push((p as u32, r as u64 * k, tors));
            }
        }
        for (p, r, tors) in contributions {
            let total = n + p;
            if total % 2 == 1 && (r > 0 || !tors.is_empty()) {
                return Err(Error::NonCollapsing(format!("simplex term in odd degree {total}: rank {r}")));
            }
            if total <= max_degree {
                rows[total as usize].rank += r;
                rows[total as usize].torsion.extend(tors);
            }
        }
    }
    Ok(SimplexAssembly { betti: BettiTable { rows }, middle, bottom })
}

pub fn simplex_assembly_betti(q: usize, max_degree: u32) -> Result<BettiTable> {
    Ok(simplex_assembly(q, max_degree)?.betti)
}

/// One degree of the `q = 2` splitting `H = K_C ⊕ Ker(H(A_L) ⊕ H(A_R) → H(A₀))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionRow {
    pub degree: u32,
    pub total: u64,
    pub k_c: u64,
    pub k_a: u64,
}

impl DecompositionRow {
    pub fn holds(&self) -> bool {
        self.total == self.k_c + self.k_a
    }
}

fn face(cover: &CoverDescription, name: &str) -> usize {
    cover.faces.iter().position(|f| f.name == name).expect("named face")
}

fn arrow(cover: &CoverDescription, s: &str, t: &str) -> RingMap {
    let (s, t) = (face(cover, s), face(cover, t));
    cover.arrows.iter().find(|a| a.from == s && a.to == t).expect("arrow").map.clone()
}

pub fn decomposition_check_q2(max_degree: u32) -> Result<Vec<DecompositionRow>> {
    let cover = build_cover_charge2_q2()?;
    let report = compute_pages(&cover, max_degree)?;
    let n2 = [arrow(&cover, "N_2", "N_L"), arrow(&cover, "N_2", "N_R")];
    let (al, ar) = (arrow(&cover, "A_L", "A_0"), arrow(&cover, "A_R", "A_0"));
    (0..=max_degree)
        .map(|n| {
            let k_c = kernel_hilbert(&n2, n)? as u64;
            let sum = Matrix::hstack(&[&al.map_matrix(n), &ar.map_matrix(n)])?;
            let k_a = kernel_rank_over_z(&sum).kernel_rank as u64;
            let total = report.betti.rank(n).unwrap_or(0);
            Ok(DecompositionRow { degree: n, total, k_c, k_a })
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::closed::closed_form_betti;

    #[test]
    fn agrees_with_cech_for_q2() {
        let s = simplex_assembly_betti(2, 12).unwrap();
        let c = compute_pages(&build_cover_charge2_q2().unwrap(), 12).unwrap().betti;
        assert_eq!(s, c);
    }

    #[test]
    fn agrees_with_closed_form_for_q3() {
        let s = simplex_assembly(3, 8).unwrap();
        assert_eq!(s.betti, closed_form_betti(2, 3, 8).unwrap());
        assert!(s.bottom_exact_in_middle() && s.middle_surjective() && s.top_surjective());
    }

    #[test]
    fn decomposition_low_degrees() {
        let rows = decomposition_check_q2(4).unwrap();
        assert_eq!((rows[0].total, rows[0].k_c, rows[0].k_a), (1, 0, 1));
        assert_eq!((rows[2].total, rows[2].k_c, rows[2].k_a), (3, 0, 3));
        assert_eq!((rows[4].total, rows[4].k_c, rows[4].k_a), (9, 1, 8));
        assert!(rows.iter().all(DecompositionRow::holds));
    }

    #[test]
    fn rejects_small_q() {
        assert!(simplex_assembly(1, 4).is_err());
    }
}
