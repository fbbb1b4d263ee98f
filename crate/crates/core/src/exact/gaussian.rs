//! Gaussian rationals `re + im·i` with `re, im ∈ Q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{rational_sqrt_exact, Field, NormedField};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::new(BigRational::new(p.into(), q.into()), BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Self::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let p = self * o.conj();
        Self::new(p.re / &n, p.im / n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Field for GaussianRational {
    /// Solves `w² = z`: with `n = |z|`, `Re w = ±sqrt((re+n)/2)` and
    /// `Im w = im / (2 Re w)`; every intermediate root must be rational.
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let n = rational_sqrt_exact(&self.norm())?;
        let x2 = (&self.re + &n) / &two;
        let w = if x2.is_zero() {
            // z is a non-positive real
            let y = rational_sqrt_exact(&((&n - &self.re) / &two))?;
            Self::new(BigRational::zero(), y)
        } else {
            let x = rational_sqrt_exact(&x2)?;
            let y = &self.im / (&two * &x);
            Self::new(x, y)
        };
        (w.clone() * w.clone() == *self).then_some(w)
    }

    fn from_i64(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl NormedField for GaussianRational {
    fn norm_sq(&self) -> BigRational {
        self.norm()
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::from(q.clone())
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

/// Text form `p/q` for reals, `p/q+r/si` otherwise.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/si`, `p-ri`, `ri`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::from(parse_rational(&s)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
        };
        Ok(Self::new(re, im))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Self::from_int(v)),
            Raw::Text(t) => t.parse().map_err(|e| match e {
                Error::Parse(msg) => serde::de::Error::custom(msg),
                other => serde::de::Error::custom(other),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::new(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn text_round_trip() {
        for s in ["1/2", "-3", "1/2+3/4i", "0-1i", "-5/3-2i"] {
            let v: GaussianRational = s.parse().unwrap();
            assert_eq!(v.to_string().parse::<GaussianRational>().unwrap(), v);
        }
        assert_eq!("i".parse::<GaussianRational>().unwrap(), g(0, 1));
        assert_eq!("-2i".parse::<GaussianRational>().unwrap(), g(0, -2));
        assert_eq!("2/4".parse::<GaussianRational>().unwrap().to_string(), "1/2");
        assert_eq!(g(1, -2).to_string(), "1-2i");
    }

    #[test]
    fn rejects_bad_text() {
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(g(-1, 0).sqrt_exact(), Some(g(0, 1)));
        // (1+2i)^2 = -3+4i
        let w = g(-3, 4).sqrt_exact().unwrap();
        assert_eq!(w.clone() * w, g(-3, 4));
        assert_eq!(g(2, 0).sqrt_exact(), None);
        assert_eq!(g(0, 2).sqrt_exact(), Some(g(1, 1)));
        assert_eq!(g(1, 1).sqrt_exact(), None);
    }

    #[test]
    fn division() {
        let a = g(3, -1);
        let b = g(1, 2);
        assert_eq!((a.clone() / b.clone()) * b, a);
    }
}
