//! Scalar traits shared by the generic matrix and configuration code.
//!
//! Everything is exact: a [`Ring`] is any `num-traits` ring with structural
//! equality, a [`Field`] additionally supports exact inversion and detects
//! exact square roots. Floating point types are deliberately not fields here.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

/// Exact field.
pub trait Field: Ring + Div<Output = Self> + Display {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Exact square root inside the field, if one exists.
    fn sqrt_exact(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;
}

/// Fields carrying a rational squared modulus, used for neighbourhood tests.
pub trait NormedField: Field {
    fn norm_sq(&self) -> BigRational;

    fn from_rational(q: &BigRational) -> Self;
}

/// Exact square root of a non-negative integer.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Exact square root of a rational (lowest terms are kept by `BigRational`).
pub fn rational_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

/// A rational lower bound for `sqrt(q)`, `q >= 0`.
pub fn rational_sqrt_floor(q: &BigRational) -> BigRational {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt() + BigInt::one();
    BigRational::new(n, d)
}

impl Field for BigRational {
    fn sqrt_exact(&self) -> Option<Self> {
        rational_sqrt_exact(self)
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl NormedField for BigRational {
    fn norm_sq(&self) -> BigRational {
        self * self
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

/// Shorthand for building a rational `p/q`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
