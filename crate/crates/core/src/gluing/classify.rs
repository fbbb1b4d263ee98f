//! Membership in the cover pieces and the image of `C = S₀ × S₀`.

use crate::error::{Error, Result};
use crate::exact::{Field, NormedField};
use crate::monad::{AnyConfig, Config1};

use super::centers::{BlowupCenters, NeighborhoodSpec};
use super::maps::{blowup_block_form, boxplus_l, boxplus_l_inverse, factors_of};

/// Outcome of [`classify_c_image`]; an image point carries its block form
/// `m′ ⊞_L m″` with `d′ = 0`, `a″ = z` and `c″b″ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum CImage<F> {
    InImage(Config1<F>),
    NotInImage(String),
}

impl<F> CImage<F> {
    pub fn is_in_image(&self) -> bool {
        matches!(self, CImage::InImage(_))
    }
}

fn check_k2(m: &Config1<impl Field>) -> Result<()> {
    if m.k() != 2 {
        return Err(Error::ShapeMismatch(format!("expected charge two, got k={}", m.k())));
    }
    Ok(())
}

/// `c·d·b = 0` and `d·aᵢ` has eigenvalues `{0, zᵢ}` for both `i`.
pub fn lemma_condition2<F: Field>(m: &Config1<F>, z: &[F; 2]) -> Result<bool> {
    check_k2(m)?;
    if !m.c.mul(&m.d).mul(&m.b).is_zero() {
        return Ok(false);
    }
    Ok([&m.a1, &m.a2].iter().zip(z).all(|(a, zi)| {
        let da = m.d.mul(a);
        da.trace() == *zi && da.det2().is_zero()
    }))
}

/// Block form of condition 3, if it applies.
fn condition3_block<F: Field>(m: &Config1<F>, z: &[F; 2]) -> Result<Option<Config1<F>>> {
    check_k2(m)?;
    let a1d = m.a1.mul(&m.d);
    let z1 = z[0].clone();
    if z1.is_zero() || a1d.trace() != z1 || !a1d.det2().is_zero() {
        return Ok(None);
    }
    let t = blowup_block_form(m, &F::zero(), &z1)?;
    let (m1, m2) = factors_of(&t);
    if boxplus_l(&m1, &m2).ok().as_ref() != Some(&t) {
        return Ok(None);
    }
    let [_, _, d1] = m1.scalars().expect("k=1");
    let [a1pp, a2pp] = m2.scalars().expect("k=1");
    let outer_zero = m2.c.mul(&m2.b).is_zero();
    let ok = d1.is_zero() && a1pp == z[0] && a2pp == z[1] && outer_zero;
    Ok(ok.then_some(t))
}

/// After a change of basis `m = m′ ⊞_L (z₁, z₂, b″, c″)` with `d′ = 0` and
/// `c″b″ = 0`.
pub fn lemma_condition3<F: Field>(m: &Config1<F>, z: &[F; 2]) -> Result<bool> {
    Ok(condition3_block(m, z)?.is_some())
}

/// Decides whether a charge-two left-side configuration comes from a point of
/// `C`, returning its block form when it does.
pub fn classify_c_image<F: NormedField>(m: &Config1<F>, centers: &BlowupCenters<F>) -> Result<CImage<F>> {
    check_k2(m)?;
    let z = centers.z();
    if !m.is_integrable() {
        return Ok(CImage::NotInImage("configuration is not integrable".into()));
    }
    if !m.c.mul(&m.d).mul(&m.b).is_zero() {
        return Ok(CImage::NotInImage("c·d·b is non-zero".into()));
    }
    if !lemma_condition2(m, &z)? {
        return Ok(CImage::NotInImage(format!("eigenvalues of d·a differ from {{0, z}} with z = ({}, {})", z[0], z[1])));
    }
    match condition3_block(m, &z)? {
        Some(t) => Ok(CImage::InImage(t)),
        None => Ok(CImage::NotInImage("no block form with d′ = 0".into())),
    }
}

/// Pieces of the cover that admit a direct membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// Charge-one blow-up configurations with `d = 0`.
    S0,
    /// Charge-one blow-up configurations with `|d a₁| < δ`.
    NPrime,
    /// Charge-one plane configurations with `|a₁ − z| < δ`.
    Nz,
    /// Charge-two blow-up configurations that split under `⊞_L`, with
    /// neighbourhoods of `0` and of the given center.
    NLCanonical,
}

/// Exact membership test; a configuration of the wrong kind or charge is
/// never a member.
pub fn membership<F: NormedField>(m: &AnyConfig<F>, piece: Piece, nb: &NeighborhoodSpec<F>) -> bool {
    match (piece, m) {
        (Piece::S0, AnyConfig::Blowup(c)) => c.k() == 1 && c.d.is_zero(),
        (Piece::NPrime, AnyConfig::Blowup(c)) if c.k() == 1 => {
            let da = c.d.mul(&c.a1)[(0, 0)].clone();
            NeighborhoodSpec { delta: nb.delta.clone(), center: F::zero() }.contains(&da)
        }
        (Piece::Nz, AnyConfig::Plane(c)) if c.k() == 1 => nb.contains(&c.a1[(0, 0)]),
        (Piece::NLCanonical, AnyConfig::Blowup(c)) if c.k() == 2 => {
            let near0 = NeighborhoodSpec { delta: nb.delta.clone(), center: F::zero() };
            boxplus_l_inverse(c, &near0, nb).is_ok()
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, GaussianRational as G};
    use crate::exact::Matrix;
    use crate::monad::Config0;

    fn g(v: i64) -> G {
        G::from(v)
    }

    fn vg(v: &[i64]) -> Vec<G> {
        v.iter().map(|&x| g(x)).collect()
    }

    fn centers() -> BlowupCenters<G> {
        BlowupCenters::new([g(0), g(0)], [g(1), g(0)]).unwrap()
    }

    #[test]
    fn image_of_c_example() {
        let m1 = Config1::charge_one(g(2), g(3), g(0), vg(&[1, 0]), vg(&[0, 1])).unwrap();
        let m2 = Config0::charge_one(g(1), g(0), vg(&[0, 1]), vg(&[0, 0])).unwrap();
        let m = boxplus_l(&m1, &m2).unwrap();
        let out = classify_c_image(&m, &centers()).unwrap();
        assert!(out.is_in_image());
        assert!(lemma_condition2(&m, &centers().z()).unwrap());
        assert!(lemma_condition3(&m, &centers().z()).unwrap());
    }

    #[test]
    fn non_degenerate_example_is_not_in_image() {
        let m1 = Config1::charge_one(g(2), g(3), g(0), vg(&[1, 0]), vg(&[0, 1])).unwrap();
        let m2 = Config0::charge_one(g(1), g(0), vg(&[0, 1]), vg(&[1, 0])).unwrap();
        let m = boxplus_l(&m1, &m2).unwrap();
        let cdb = m.c.mul(&m.d).mul(&m.b);
        assert_eq!(cdb, Matrix::from_rows(vec![vg(&[0, 1]), vg(&[0, 0])]).unwrap());
        assert!(!classify_c_image(&m, &centers()).unwrap().is_in_image());
    }

    #[test]
    fn eigenvalue_mismatch() {
        let m1 = Config1::charge_one(g(2), g(3), g(0), vg(&[1, 0]), vg(&[0, 1])).unwrap();
        let m2 = Config0::charge_one(g(5), g(0), vg(&[0, 1]), vg(&[0, 0])).unwrap();
        let m = boxplus_l(&m1, &m2).unwrap();
        assert!(!classify_c_image(&m, &centers()).unwrap().is_in_image());
    }

    #[test]
    fn membership_tests() {
        let nb = NeighborhoodSpec::new(rat(1, 2), g(3)).unwrap();
        let s0 = Config1::charge_one(g(4), g(1), g(0), vg(&[1]), vg(&[0])).unwrap();
        assert!(membership(&AnyConfig::Blowup(s0), Piece::S0, &nb));
        let at_center = Config0::charge_one(g(3), g(9), vg(&[1]), vg(&[0])).unwrap();
        assert!(membership(&AnyConfig::Plane(at_center), Piece::Nz, &nb));
        // d′a₁′ = δ exactly
        let edge = Config1::charge_one(G::from_ratio(1, 2), g(0), g(1), vg(&[1]), vg(&[0])).unwrap();
        assert!(!membership(&AnyConfig::Blowup(edge), Piece::NPrime, &nb));
        let inside = Config1::charge_one(G::from_ratio(1, 4), g(0), g(1), vg(&[1]), vg(&[0])).unwrap();
        assert!(membership(&AnyConfig::Blowup(inside), Piece::NPrime, &nb));
    }
}
