//! Retraction homotopies `H_{x}`, `H₁`, `H_L`, `H₀` and `H₂` on `M₂(X₂)`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{Matrix, NormedField};
use crate::monad::{Config0, Config1};

use super::centers::{is_one, is_zero, unit_interval, BlowupCenters, NeighborhoodSpec};
use super::classify::{classify_c_image, CImage};
use super::maps::{
    boxplus0, boxplus0_inverse, boxplus_l, boxplus_l_inverse, direct_image, pullback_blowup, s_class_k1,
    translate_tau,
};

/// `H_x(a, b, c; t) = (t²a + (1 − t²)x, tb, tc)`.
pub fn h_xy<F: NormedField>(m: &Config0<F>, x: &[F; 2], t: &BigRational) -> Result<Config0<F>> {
    unit_interval(t)?;
    let t = F::from_rational(t);
    let t2 = t.clone() * t.clone();
    let s = F::one() - t2.clone();
    let k = m.k();
    let shift = |a: &Matrix<F>, xi: &F| a.scale(&t2).add(&Matrix::scalar(k, s.clone() * xi.clone()));
    Ok(Config0 { a1: shift(&m.a1, &x[0]), a2: shift(&m.a2, &x[1]), b: m.b.scale(&t), c: m.c.scale(&t) })
}

/// `H₁(a₁, a₂, d, b, c; t) = (a₁, a₂, t²d, b, c)`.
pub fn h1<F: NormedField>(m: &Config1<F>, t: &BigRational) -> Result<Config1<F>> {
    unit_interval(t)?;
    let t = F::from_rational(t);
    Ok(Config1 { d: m.d.scale(&(t.clone() * t)), ..m.clone() })
}

/// Homotopy selector for [`Gluing::homotopy`].
#[derive(Clone, Debug, PartialEq)]
pub enum Homotopy<F> {
    Hxy([F; 2]),
    H1,
    HL,
    H0,
}

/// Two blow-up centers with the neighbourhood radius used by the gluing maps.
///
/// Left-side configurations live over the blow-up at `x_L` in coordinates
/// centred there, so the other center sits at `z`. The right side is the
/// [`mirrored`](Gluing::mirrored) picture.
#[derive(Clone, Debug, PartialEq)]
pub struct Gluing<F> {
    pub centers: BlowupCenters<F>,
    pub delta: BigRational,
}

impl<F: NormedField> Gluing<F> {
    pub fn new(centers: BlowupCenters<F>) -> Self {
        let delta = centers.default_delta();
        Self { centers, delta }
    }

    pub fn with_delta(centers: BlowupCenters<F>, delta: BigRational) -> Result<Self> {
        NeighborhoodSpec::<F>::origin(delta.clone())?;
        Ok(Self { centers, delta })
    }

    pub fn mirrored(&self) -> Self {
        Self { centers: self.centers.mirrored(), delta: self.delta.clone() }
    }

    fn nb(&self, center: F) -> NeighborhoodSpec<F> {
        NeighborhoodSpec { delta: self.delta.clone(), center }
    }

    pub fn near_origin(&self) -> NeighborhoodSpec<F> {
        self.nb(F::zero())
    }

    pub fn near_z(&self) -> NeighborhoodSpec<F> {
        self.nb(self.centers.z()[0].clone())
    }

    pub fn near_left(&self) -> NeighborhoodSpec<F> {
        self.nb(self.centers.xl[0].clone())
    }

    pub fn near_right(&self) -> NeighborhoodSpec<F> {
        self.nb(self.centers.xr[0].clone())
    }

    /// Splits a left-side configuration as `m′ ⊞_L m″`.
    pub fn split_left(&self, m: &Config1<F>) -> Result<(Config1<F>, Config0<F>)> {
        boxplus_l_inverse(m, &self.near_origin(), &self.near_z())
    }

    /// Splits a plane configuration as `m_L ⊞₀ m_R`.
    pub fn split_plane(&self, y: &Config0<F>) -> Result<(Config0<F>, Config0<F>)> {
        boxplus0_inverse(y, &self.near_left(), &self.near_right())
    }

    /// `H_L(m′ ⊞_L m″, t) = H₁(m′, t) ⊞_L H_z(m″, t)`.
    pub fn h_l(&self, m: &Config1<F>, t: &BigRational) -> Result<Config1<F>> {
        unit_interval(t)?;
        if is_one(t) {
            return Ok(m.clone());
        }
        let (m1, m2) = self.split_left(m)?;
        boxplus_l(&h1(&m1, t)?, &h_xy(&m2, &self.centers.z(), t)?)
    }

    /// `H_R`, the mirror image of `H_L`.
    pub fn h_r(&self, m: &Config1<F>, t: &BigRational) -> Result<Config1<F>> {
        self.mirrored().h_l(m, t)
    }

    /// `H₀(m_L ⊞₀ m_R, t) = H_{x_L}(m_L, t) ⊞₀ H_{x_R}(m_R, t)`.
    pub fn h0(&self, y: &Config0<F>, t: &BigRational) -> Result<Config0<F>> {
        unit_interval(t)?;
        if is_one(t) {
            return Ok(y.clone());
        }
        let (ml, mr) = self.split_plane(y)?;
        boxplus0(&h_xy(&ml, &self.centers.xl, t)?, &h_xy(&mr, &self.centers.xr, t)?)
    }

    pub fn homotopy(&self, m: &crate::monad::AnyConfig<F>, variant: &Homotopy<F>, t: &BigRational) -> Result<crate::monad::AnyConfig<F>> {
        use crate::monad::AnyConfig::{Blowup, Plane};
        match (variant, m) {
            (Homotopy::Hxy(x), Plane(c)) => h_xy(c, x, t).map(Plane),
            (Homotopy::H1, Blowup(c)) => h1(c, t).map(Blowup),
            (Homotopy::HL, Blowup(c)) => self.h_l(c, t).map(Blowup),
            (Homotopy::H0, Plane(c)) => self.h0(c, t).map(Plane),
            _ => Err(Error::ShapeMismatch(format!("homotopy {variant:?} does not apply to this configuration kind"))),
        }
    }

    /// Ideal charge-one plane configuration `(x₁, x₂, 0, 0)`.
    fn ideal_point(&self, x: &[F; 2], r: usize) -> Config0<F> {
        Config0 {
            a1: Matrix::scalar(1, x[0].clone()),
            a2: Matrix::scalar(1, x[1].clone()),
            b: Matrix::zeros(1, r),
            c: Matrix::zeros(r, 1),
        }
    }
}

/// A point of `M₂(X₂)`: either a pair of side configurations or a point of
/// `C`, stored as one `d = 0` charge-one configuration per blow-up.
#[derive(Clone, Debug, PartialEq)]
pub enum X2Point<F> {
    Pair { left: Config1<F>, right: Config1<F> },
    C { left_s0: Config1<F>, right_s0: Config1<F> },
}

impl<F: NormedField> X2Point<F> {
    /// A plane configuration away from both centers, seen from each side.
    pub fn from_plane(y: &Config0<F>, g: &Gluing<F>) -> Self {
        X2Point::Pair { left: pullback_blowup(y, &g.centers.xl), right: pullback_blowup(y, &g.centers.xr) }
    }

    /// Glues a charge-one configuration near each exceptional line.
    pub fn glue(ml: &Config1<F>, mr: &Config1<F>, g: &Gluing<F>) -> Result<Self> {
        let z = g.centers.z();
        let minus_z = [-z[0].clone(), -z[1].clone()];
        let left = boxplus_l(ml, &translate_tau(&direct_image(mr), &minus_z))?;
        let right = boxplus_l(mr, &translate_tau(&direct_image(ml), &z))?;
        Ok(X2Point::Pair { left, right })
    }

    /// Left and right charge-two configurations of this point.
    pub fn sides(&self, g: &Gluing<F>) -> Result<(Config1<F>, Config1<F>)> {
        match self {
            X2Point::Pair { left, right } => Ok((left.clone(), right.clone())),
            X2Point::C { left_s0, right_s0 } => {
                let z = g.centers.z();
                let r = left_s0.r();
                let left = boxplus_l(left_s0, &g.ideal_point(&z, r))?;
                let right = boxplus_l(right_s0, &g.ideal_point(&[-z[0].clone(), -z[1].clone()], r))?;
                Ok((left, right))
            }
        }
    }

    pub fn is_c_point(&self) -> bool {
        matches!(self, X2Point::C { .. })
    }
}

fn inconsistent(side: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::InconsistentPair(format!("{side} side is outside the gluing neighbourhood: {e}"))
}

/// S-classes of the two plane factors of a side's direct image, placed back
/// in global coordinates.
fn plane_classes<F: NormedField>(m: &Config1<F>, center: &[F; 2], g: &Gluing<F>) -> Result<[Config0<F>; 2]> {
    let minus = [-center[0].clone(), -center[1].clone()];
    let y = translate_tau(&direct_image(m), &minus);
    let (l, r) = g.split_plane(&y)?;
    Ok([s_class_k1(&l), s_class_k1(&r)])
}

/// `H₂(x, t)`: fixed on `C` and at `t = 1`, lands in `C` at `t = 0`, and
/// otherwise applies `H_L` and `H_R` to the two sides.
pub fn h2<F: NormedField>(x: &X2Point<F>, t: &BigRational, g: &Gluing<F>) -> Result<X2Point<F>> {
    unit_interval(t)?;
    let (left, right) = match x {
        X2Point::C { .. } => return Ok(x.clone()),
        X2Point::Pair { left, right } => (left, right),
    };
    if is_one(t) {
        return Ok(x.clone());
    }
    let mirror = g.mirrored();
    let in_c = |m: &Config1<F>, gl: &Gluing<F>| -> Result<bool> {
        Ok(matches!(classify_c_image(m, &gl.centers)?, CImage::InImage(_)))
    };
    if in_c(left, g)? && in_c(right, &mirror)? {
        return Ok(x.clone());
    }
    let (m1, _) = g.split_left(left).map_err(inconsistent("left"))?;
    let (n1, _) = mirror.split_left(right).map_err(inconsistent("right"))?;
    let new_left = g.h_l(left, t).map_err(inconsistent("left"))?;
    let new_right = g.h_r(right, t).map_err(inconsistent("right"))?;
    let pl = plane_classes(&new_left, &g.centers.xl, g).map_err(inconsistent("left"))?;
    let pr = plane_classes(&new_right, &g.centers.xr, &mirror).map_err(inconsistent("right"))?;
    // the right side lists its own neighbourhood first
    if pl[0] != pr[1] || pl[1] != pr[0] {
        return Err(Error::InconsistentPair("the two sides have different direct images".into()));
    }
    if is_zero(t) {
        return Ok(X2Point::C { left_s0: h1(&m1, t)?, right_s0: h1(&n1, t)? });
    }
    Ok(X2Point::Pair { left: new_left, right: new_right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, GaussianRational as G};

    fn g(v: i64) -> G {
        G::from(v)
    }

    fn vg(v: &[i64]) -> Vec<G> {
        v.iter().map(|&x| g(x)).collect()
    }

    fn gluing() -> Gluing<G> {
        Gluing::new(BlowupCenters::new([g(0), g(0)], [g(10), g(2)]).unwrap())
    }

    fn ts() -> Vec<BigRational> {
        vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)]
    }

    #[test]
    fn hxy_endpoints() {
        let m = Config0::charge_one(g(3), g(4), vg(&[1, 2]), vg(&[0, 0])).unwrap();
        let x = [g(1), g(-1)];
        assert_eq!(h_xy(&m, &x, &rat(1, 1)).unwrap(), m);
        let end = h_xy(&m, &x, &rat(0, 1)).unwrap();
        assert_eq!(end, Config0::charge_one(g(1), g(-1), vg(&[0, 0]), vg(&[0, 0])).unwrap());
        assert!(matches!(h_xy(&m, &x, &rat(3, 2)), Err(Error::InvalidParameter(_))));
    }

    fn plane_pair() -> Config0<G> {
        let ml = Config0::charge_one(G::from_ratio(1, 3), g(1), vg(&[1, 2]), vg(&[2, -1])).unwrap();
        let mr = Config0::charge_one(G::from_ratio(31, 3), g(0), vg(&[1, 1]), vg(&[3, -3])).unwrap();
        boxplus0(&ml, &mr).unwrap()
    }

    #[test]
    fn hl_of_pullback_matches_h0_for_positive_t() {
        let gl = gluing();
        let y = plane_pair();
        for t in ts().into_iter().skip(1) {
            let lhs = gl.h_l(&pullback_blowup(&y, &gl.centers.xl), &t).unwrap();
            let rhs = pullback_blowup(&gl.h0(&y, &t).unwrap(), &gl.centers.xl);
            assert_eq!(gl.split_left(&lhs).unwrap(), gl.split_left(&rhs).unwrap(), "t = {t}");
        }
    }

    #[test]
    fn h2_endpoints_and_defining_equations() {
        let gl = gluing();
        let x = X2Point::from_plane(&plane_pair(), &gl);
        let (left, right) = x.sides(&gl).unwrap();
        assert_eq!(h2(&x, &rat(1, 1), &gl).unwrap(), x);
        for t in ts() {
            let out = h2(&x, &t, &gl).unwrap();
            let (nl, nr) = out.sides(&gl).unwrap();
            assert_eq!(nl, gl.h_l(&left, &t).unwrap(), "t = {t}");
            assert_eq!(nr, gl.h_r(&right, &t).unwrap(), "t = {t}");
        }
        let end = h2(&x, &rat(0, 1), &gl).unwrap();
        assert!(end.is_c_point());
        let (cl, cr) = end.sides(&gl).unwrap();
        assert!(classify_c_image(&cl, &gl.centers).unwrap().is_in_image());
        assert!(classify_c_image(&cr, &gl.mirrored().centers).unwrap().is_in_image());
    }

    #[test]
    fn c_points_are_fixed() {
        let gl = gluing();
        let s0l = Config1::charge_one(g(1), g(2), g(0), vg(&[1, 0]), vg(&[0, 0])).unwrap();
        let s0r = Config1::charge_one(g(-4), g(1), g(0), vg(&[0, 0]), vg(&[1, 1])).unwrap();
        let c = X2Point::C { left_s0: s0l, right_s0: s0r };
        for t in ts() {
            assert_eq!(h2(&c, &t, &gl).unwrap(), c);
        }
    }

    #[test]
    fn glued_pair_is_consistent() {
        let gl = gluing();
        let ml = Config1::charge_one(g(2), g(3), G::from_ratio(1, 5), vg(&[1, 0]), vg(&[1, 1])).unwrap();
        let mr = Config1::charge_one(g(-1), g(1), G::from_ratio(1, 7), vg(&[0, 2]), vg(&[1, 0])).unwrap();
        let x = X2Point::glue(&ml, &mr, &gl).unwrap();
        for t in ts() {
            h2(&x, &t, &gl).unwrap();
        }
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let gl = gluing();
        let (left, _) = X2Point::from_plane(&plane_pair(), &gl).sides(&gl).unwrap();
        let other = Config0::charge_one(G::from_ratio(1, 3), g(1), vg(&[5, 2]), vg(&[2, -1])).unwrap();
        let mr = Config0::charge_one(G::from_ratio(31, 3), g(0), vg(&[1, 1]), vg(&[3, -3])).unwrap();
        let right = pullback_blowup(&boxplus0(&other, &mr).unwrap(), &gl.centers.xr);
        let x = X2Point::Pair { left, right };
        assert!(matches!(h2(&x, &rat(1, 2), &gl), Err(Error::InconsistentPair(_))));
    }
}
