//! `E₁` and `E₂` pages of the Čech spectral sequence of a cover, computed
//! over the integers degree by degree.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::invariant_factors;

use super::betti::{BettiRow, BettiTable};
use super::cover::CoverDescription;

/// Pages in one coefficient degree `n` (the row `q = n` of the sequence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePage {
    pub degree: u32,
    pub e1: Vec<usize>,
    pub d1_ranks: Vec<usize>,
    pub e2: Vec<usize>,
    pub e2_torsion: Vec<Vec<BigInt>>,
}

impl DegreePage {
    /// `d₁` onto the last column is surjective with no torsion left over.
    pub fn top_surjective(&self) -> bool {
        let top = self.e2.len() - 1;
        self.e2[top] == 0 && self.e2_torsion[top].is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralReport {
    pub pages: Vec<DegreePage>,
    pub betti: BettiTable,
    pub d1_squared_zero: bool,
    pub odd_rows_vanish: bool,
}

impl SpectralReport {
    pub fn top_surjective_in_even_degrees(&self) -> bool {
        self.pages.iter().filter(|p| p.degree % 2 == 0 && p.degree > 0).all(DegreePage::top_surjective)
    }
}

/// Cohomology of the row `E₁^{•,n}`.
pub fn degree_page(cover: &CoverDescription, n: u32) -> DegreePage {
    let top = cover.max_dim();
    let e1: Vec<usize> = (0..=top).map(|p| cover.e1_rank(p, n)).collect();
    let snfs: Vec<_> = (0..top).map(|p| invariant_factors(&cover.d1(p, n))).collect();
    let d1_ranks: Vec<usize> = snfs.iter().map(|s| s.rank).collect();
    let rank_out = |p: usize| if p < top { d1_ranks[p] } else { 0 };
    let rank_in = |p: usize| if p > 0 { d1_ranks[p - 1] } else { 0 };
    let e2 = (0..=top).map(|p| e1[p] - rank_out(p) - rank_in(p)).collect();
    let e2_torsion = (0..=top).map(|p| if p == 0 { vec![] } else { snfs[p - 1].torsion() }).collect();
    DegreePage { degree: n, e1, d1_ranks, e2, e2_torsion }
}

/// Runs the sequence up to `max_degree` and assembles total-degree Betti
/// numbers from `E₂`, which is certified to be the last page.
///
/// All coefficient rings are even, so `d_r` for `r ≥ 2` lands in an odd row
/// and vanishes. A non-zero `E₂^{p,n}` in odd total degree `p + n` is still
/// reported as [`Error::NonCollapsing`]: every cover here is expected to have
/// none.
pub fn compute_pages(cover: &CoverDescription, max_degree: u32) -> Result<SpectralReport> {
    let pages: Vec<DegreePage> = (0..=max_degree).map(|n| degree_page(cover, n)).collect();
    let d1_squared_zero = (0..=max_degree).all(|n| cover.d1_squared_is_zero(n));
    if !d1_squared_zero {
        return Err(Error::NonCollapsing(format!("d1 does not square to zero on {}", cover.name)));
    }
    let odd_rows_vanish = (0..=max_degree).all(|n| cover.odd_rows_vanish(n));
    if !odd_rows_vanish {
        return Err(Error::NonCollapsing(format!("{} has odd-degree coefficients", cover.name)));
    }
    let mut rows: Vec<BettiRow> =
        (0..=max_degree).map(|d| BettiRow { degree: d, rank: 0, torsion: vec![] }).collect();
    for page in &pages {
        for (p, (&r, tors)) in page.e2.iter().zip(&page.e2_torsion).enumerate() {
            let total = page.degree + p as u32;
            if (r > 0 || !tors.is_empty()) && total % 2 == 1 {
                return Err(Error::NonCollapsing(format!(
                    "E2^{{{p},{}}} = Z^{r} (torsion {:?}) sits in odd total degree {total}",
                    page.degree, tors
                )));
            }
            if total <= max_degree {
                rows[total as usize].rank += r as u64;
                rows[total as usize].torsion.extend(tors.iter().cloned());
            }
        }
    }
    Ok(SpectralReport { pages, betti: BettiTable { rows }, d1_squared_zero, odd_rows_vanish })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::cover::{build_cover_charge1, build_cover_charge2_q2};

    #[test]
    fn charge1_rule() {
        for q in 0..=3 {
            let r = compute_pages(&build_cover_charge1(q).unwrap(), 12).unwrap();
            for (d, b) in r.betti.ranks().into_iter().enumerate() {
                let expect = if d % 2 == 0 { 1 + q as u64 * (d as u64 / 2) } else { 0 };
                assert_eq!(b, expect, "q={q} degree {d}");
            }
        }
    }

    #[test]
    fn charge1_q3_degree2() {
        let p = degree_page(&build_cover_charge1(3).unwrap(), 2);
        assert_eq!(p.e2, vec![4, 0, 0]);
    }

    #[test]
    fn charge2_low_degrees() {
        let c = build_cover_charge2_q2().unwrap();
        let p = degree_page(&c, 2);
        assert_eq!(p.e1, vec![8, 7, 2]);
        assert_eq!(p.e2, vec![3, 0, 0]);
        let r = compute_pages(&c, 6).unwrap();
        assert_eq!(r.betti.ranks(), vec![1, 0, 3, 0, 9, 0, 18]);
        assert!(r.top_surjective_in_even_degrees());
    }

    #[test]
    fn zero_maps_keep_e1() {
        let mut c = build_cover_charge2_q2().unwrap();
        for a in &mut c.arrows {
            for img in &mut a.map.images {
                *img = crate::graded::Polynomial::zero();
            }
        }
        let p = degree_page(&c, 4);
        assert_eq!(p.e1, p.e2);
    }
}
