//! Blow-up centers and the δ-neighbourhoods used by the gluing maps.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::rational_sqrt_floor;
use crate::exact::NormedField;

/// Centers `x_L`, `x_R` of the two blow-ups, `x₁L ≠ x₁R`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupCenters<F> {
    pub xl: [F; 2],
    pub xr: [F; 2],
}

impl<F: NormedField> BlowupCenters<F> {
    pub fn new(xl: [F; 2], xr: [F; 2]) -> Result<Self> {
        if xl[0] == xr[0] {
            return Err(Error::InvalidCenters(format!("x1L = x1R = {}", xl[0])));
        }
        Ok(Self { xl, xr })
    }

    /// `z = x_R − x_L`.
    pub fn z(&self) -> [F; 2] {
        [self.xr[0].clone() - self.xl[0].clone(), self.xr[1].clone() - self.xl[1].clone()]
    }

    /// The same pair seen from the right-hand blow-up.
    pub fn mirrored(&self) -> Self {
        Self { xl: self.xr.clone(), xr: self.xl.clone() }
    }

    /// A radius with `4δ < |z₁|`, so the neighbourhoods of `0` and `z₁` (and
    /// of `x₁L`, `x₁R`) are disjoint with room to spare.
    pub fn default_delta(&self) -> BigRational {
        let z1 = self.z()[0].norm_sq();
        rational_sqrt_floor(&z1) / BigRational::from_integer(5.into())
    }
}

/// Open disc `|x − center| < δ`, tested as `|x − center|² < δ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodSpec<F> {
    pub delta: BigRational,
    pub center: F,
}

impl<F: NormedField> NeighborhoodSpec<F> {
    pub fn new(delta: BigRational, center: F) -> Result<Self> {
        if !delta.is_positive() {
            return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
        }
        Ok(Self { delta, center })
    }

    pub fn origin(delta: BigRational) -> Result<Self> {
        Self::new(delta, F::zero())
    }

    pub fn contains(&self, x: &F) -> bool {
        (x.clone() - self.center.clone()).norm_sq() < &self.delta * &self.delta
    }
}

/// Checks `0 ≤ t ≤ 1`.
pub(crate) fn unit_interval(t: &BigRational) -> Result<()> {
    if t.is_negative() || *t > BigRational::from_integer(1.into()) {
        return Err(Error::InvalidParameter(format!("t = {t} is outside [0, 1]")));
    }
    Ok(())
}

pub(crate) fn is_one(t: &BigRational) -> bool {
    *t == BigRational::from_integer(1.into())
}

pub(crate) fn is_zero(t: &BigRational) -> bool {
    t.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, GaussianRational as G};

    fn g(v: i64) -> G {
        G::from(v)
    }

    #[test]
    fn centers_need_distinct_first_coordinates() {
        assert!(matches!(BlowupCenters::new([g(1), g(0)], [g(1), g(5)]), Err(Error::InvalidCenters(_))));
        let c = BlowupCenters::new([g(1), g(0)], [g(4), g(5)]).unwrap();
        assert_eq!(c.z(), [g(3), g(5)]);
        assert_eq!(c.mirrored().z(), [g(-3), g(-5)]);
    }

    #[test]
    fn default_delta_separates() {
        for (a, b) in [(0, 1), (0, 10), (-3, 4), (0, 2)] {
            let c = BlowupCenters::new([g(a), g(0)], [g(b), g(0)]).unwrap();
            let d = c.default_delta();
            let z2 = c.z()[0].norm_sq();
            let four_d = rat(4, 1) * d.clone();
            assert!(d > rat(0, 1));
            assert!(&four_d * &four_d < z2);
        }
    }

    #[test]
    fn strict_boundary() {
        let nb = NeighborhoodSpec::new(rat(1, 2), g(0)).unwrap();
        assert!(nb.contains(&G::from_ratio(1, 3)));
        assert!(!nb.contains(&G::from_ratio(1, 2)));
        assert!(NeighborhoodSpec::new(rat(0, 1), g(0)).is_err());
    }
}
