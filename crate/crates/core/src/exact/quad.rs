//! Elements `p + q·√D` of a quadratic extension of an exact field.
//!
//! Values whose `q` vanishes are base-field elements and combine with any
//! extension. Two values with non-zero `q` must share the same `D`; mixing
//! extensions is a programming error and panics (callers that may meet two
//! different discriminants check [`QuadExt::compatible`] first).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::Field;

#[derive(Clone, Debug)]
pub struct QuadExt<F> {
    p: F,
    q: F,
    d: F,
}

impl<F: Field> QuadExt<F> {
    pub fn base(p: F) -> Self {
        Self { p, q: F::zero(), d: F::zero() }
    }

    /// `p + q·√d`, collapsing to the base field when `d` is a perfect square.
    pub fn new(p: F, q: F, d: F) -> Self {
        if q.is_zero() {
            return Self::base(p);
        }
        match d.sqrt_exact() {
            Some(s) => Self::base(p + q * s),
            None => Self { p, q, d },
        }
    }

    // `d` is already known not to be a square
    fn raw(p: F, q: F, d: F) -> Self {
        if q.is_zero() {
            Self::base(p)
        } else {
            Self { p, q, d }
        }
    }

    /// `√d` itself.
    pub fn sqrt_of(d: F) -> Self {
        Self::new(F::zero(), F::one(), d)
    }

    pub fn rational_part(&self) -> &F {
        &self.p
    }

    pub fn radical_part(&self) -> &F {
        &self.q
    }

    /// Discriminant, `None` for base-field values.
    pub fn discriminant(&self) -> Option<&F> {
        (!self.q.is_zero()).then_some(&self.d)
    }

    pub fn is_base(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_base(&self) -> Option<F> {
        self.is_base().then(|| self.p.clone())
    }

    pub fn conj(&self) -> Self {
        Self { p: self.p.clone(), q: -self.q.clone(), d: self.d.clone() }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        match (self.discriminant(), other.discriminant()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    fn shared_d(&self, other: &Self) -> F {
        match (self.discriminant(), other.discriminant()) {
            (Some(a), Some(b)) => {
                assert!(a == b, "mixing quadratic extensions √{a} and √{b}");
                a.clone()
            }
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => F::zero(),
        }
    }
}

/// Common discriminant of a family of values, `Err(())` if two differ.
pub fn common_discriminant<'a, F: Field + 'a>(
    values: impl IntoIterator<Item = &'a QuadExt<F>>,
) -> Result<Option<F>, ()> {
    let mut found: Option<F> = None;
    for v in values {
        if let Some(d) = v.discriminant() {
            match &found {
                Some(f) if f != d => return Err(()),
                Some(_) => {}
                None => found = Some(d.clone()),
            }
        }
    }
    Ok(found)
}

impl<F: Field> PartialEq for QuadExt<F> {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.q == o.q && (self.q.is_zero() || self.d == o.d)
    }
}

impl<F: Field> Zero for QuadExt<F> {
    fn zero() -> Self {
        Self::base(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl<F: Field> One for QuadExt<F> {
    fn one() -> Self {
        Self::base(F::one())
    }
}

impl<F: Field> Add for QuadExt<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.shared_d(&o);
        Self::raw(self.p + o.p, self.q + o.q, d)
    }
}

impl<F: Field> Sub for QuadExt<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let d = self.shared_d(&o);
        Self::raw(self.p - o.p, self.q - o.q, d)
    }
}

impl<F: Field> Neg for QuadExt<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { p: -self.p, q: -self.q, d: self.d }
    }
}

impl<F: Field> Mul for QuadExt<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.shared_d(&o);
        let p = self.p.clone() * o.p.clone() + self.q.clone() * o.q.clone() * d.clone();
        let q = self.p * o.q + self.q * o.p;
        Self::raw(p, q, d)
    }
}

impl<F: Field> Div for QuadExt<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        // (p - q√d) / (p² - q²d); the norm is non-zero because d is not a square
        let norm = o.p.clone() * o.p.clone() - o.q.clone() * o.q.clone() * o.d.clone();
        assert!(!norm.is_zero(), "division by zero in quadratic extension");
        let num = self * o.conj();
        let d = num.d.clone();
        Self::raw(num.p / norm.clone(), num.q / norm, d)
    }
}

impl<F: Field> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "({})+({})*sqrt({})", self.p, self.q, self.d)
        }
    }
}

impl<F: Field> Field for QuadExt<F> {
    /// Square roots are only taken inside the base field; nested extensions
    /// are out of scope.
    fn sqrt_exact(&self) -> Option<Self> {
        self.to_base()?.sqrt_exact().map(Self::base)
    }

    fn from_i64(v: i64) -> Self {
        Self::base(F::from_i64(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use num_rational::BigRational;

    type Q = QuadExt<BigRational>;

    #[test]
    fn collapses_perfect_squares() {
        let r = Q::sqrt_of(rat(9, 4));
        assert!(r.is_base());
        assert_eq!(r.to_base(), Some(rat(3, 2)));
    }

    #[test]
    fn root_two_arithmetic() {
        let s = Q::sqrt_of(rat(2, 1));
        assert_eq!(s.clone() * s.clone(), Q::base(rat(2, 1)));
        let x = Q::base(rat(1, 1)) + s.clone();
        let y = Q::one() / x.clone();
        assert_eq!(x * y, Q::one());
        assert_eq!((s.clone() + Q::base(rat(3, 1))) - s, Q::base(rat(3, 1)));
    }

    #[test]
    #[should_panic]
    fn mixing_extensions_panics() {
        let _ = Q::sqrt_of(rat(2, 1)) + Q::sqrt_of(rat(3, 1));
    }
}
