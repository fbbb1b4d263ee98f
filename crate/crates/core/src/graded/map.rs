//! Ring maps given on generators and their matrices in monomial bases.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{kernel_rank_over_z, Matrix};

use super::ring::{GradedRing, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Multiplicative map `source → target` fixed by generator images, with a
/// sign used when it enters a differential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingMap {
    pub source: GradedRing,
    pub target: GradedRing,
    pub images: Vec<Polynomial>,
    pub sign: Sign,
}

type Expanded = HashMap<Monomial, BigInt>;

fn expand(p: &Polynomial) -> Expanded {
    p.terms().map(|(m, c)| (m.clone(), BigInt::from(*c))).collect()
}

fn multiply(a: &Expanded, b: &Expanded) -> Expanded {
    let mut out: Expanded = HashMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl RingMap {
    /// Checks that generator images are homogeneous of the right degree.
    pub fn new(source: GradedRing, target: GradedRing, images: Vec<Polynomial>, sign: Sign) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::ShapeMismatch(format!("{} images for {} generators", images.len(), source.len())));
        }
        for (g, p) in source.generators().iter().zip(&images) {
            if p.terms().any(|(m, _)| m.len() != target.len()) {
                return Err(Error::ShapeMismatch(format!("image of {} has the wrong number of exponents", g.name)));
            }
            if let Some(d) = p.homogeneous_degree(&target)? {
                if d != g.degree {
                    return Err(Error::DegreeMismatch(format!(
                        "{} has degree {} but its image {} has degree {d}",
                        g.name,
                        g.degree,
                        p.display(&target)
                    )));
                }
            }
        }
        Ok(Self { source, target, images, sign })
    }

    /// Images written as polynomial strings in the target's generator names.
    pub fn parse(source: &GradedRing, target: &GradedRing, images: &[&str], sign: Sign) -> Result<Self> {
        let images = images.iter().map(|s| Polynomial::parse(s, target)).collect::<Result<_>>()?;
        Self::new(source.clone(), target.clone(), images, sign)
    }

    pub fn identity(ring: &GradedRing) -> Self {
        let images = (0..ring.len())
            .map(|i| {
                let mut m = vec![0; ring.len()];
                m[i] = 1;
                Polynomial::monomial(m, 1)
            })
            .collect();
        Self { source: ring.clone(), target: ring.clone(), images, sign: Sign::Plus }
    }

    /// `self ∘ inner`, signs multiplied.
    pub fn compose(&self, inner: &RingMap) -> Result<RingMap> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch("composition of maps between different rings".into()));
        }
        let mut images = Vec::new();
        for p in &inner.images {
            let mut acc: Expanded = HashMap::new();
            for (m, c) in p.terms() {
                for (tm, tc) in self.apply_monomial(m, &mut HashMap::new()) {
                    *acc.entry(tm).or_insert_with(BigInt::zero) += tc * c;
                }
            }
            let mut q = Polynomial::zero();
            for (m, c) in acc {
                let c: i64 = c.try_into().map_err(|_| Error::InvalidParameter("coefficient overflow".into()))?;
                q.add_term(m, c);
            }
            images.push(q);
        }
        let sign = if self.sign == inner.sign { Sign::Plus } else { Sign::Minus };
        RingMap::new(inner.source.clone(), self.target.clone(), images, sign)
    }

    fn apply_monomial(&self, m: &[u32], powers: &mut HashMap<(usize, u32), Expanded>) -> Expanded {
        let mut acc: Expanded = HashMap::from([(vec![0; self.target.len()], BigInt::one())]);
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = powers
                .entry((i, e))
                .or_insert_with(|| {
                    let base = expand(&self.images[i]);
                    let mut p: Expanded = HashMap::from([(vec![0; self.target.len()], BigInt::one())]);
                    for _ in 0..e {
                        p = multiply(&p, &base);
                    }
                    p
                })
                .clone();
            acc = multiply(&acc, &pw);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Matrix in degree `n`: columns indexed by the source basis, rows by the
    /// target basis, sign included.
    pub fn map_matrix(&self, n: u32) -> Matrix<BigInt> {
        let src = self.source.monomial_basis(n);
        let tgt = self.target.monomial_basis(n);
        let index: HashMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Matrix::zeros(tgt.len(), src.len());
        let mut powers = HashMap::new();
        let sign = BigInt::from(self.sign.value());
        for (j, m) in src.iter().enumerate() {
            for (tm, c) in self.apply_monomial(m, &mut powers) {
                out[(index[&tm], j)] = c * &sign;
            }
        }
        out
    }
}

/// Kernel rank in degree `n` of the maps stacked into one map out of their
/// common source.
pub fn kernel_hilbert(maps: &[RingMap], n: u32) -> Result<usize> {
    let Some(first) = maps.first() else {
        return Err(Error::InvalidParameter("no maps given".into()));
    };
    if maps.iter().any(|f| f.source != first.source) {
        return Err(Error::ShapeMismatch("maps do not share a source".into()));
    }
    let mats: Vec<Matrix<BigInt>> = maps.iter().map(|f| f.map_matrix(n)).collect();
    let refs: Vec<&Matrix<BigInt>> = mats.iter().collect();
    let stacked = Matrix::vstack(&refs)?;
    Ok(kernel_rank_over_z(&stacked).kernel_rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()).unwrap()
    }

    fn whitney(sign: Sign) -> RingMap {
        let a = GradedRing::new(&[("a1", 2), ("a2", 4)]).unwrap();
        let n = GradedRing::new(&[("n0L", 2), ("n0R", 2)]).unwrap();
        RingMap::parse(&a, &n, &["n0L + n0R", "n0L*n0R"], sign).unwrap()
    }

    #[test]
    fn whitney_sum_degree_four() {
        assert_eq!(whitney(Sign::Plus).map_matrix(4), im(vec![vec![1, 0], vec![2, 1], vec![1, 0]]));
        assert_eq!(whitney(Sign::Minus).map_matrix(4), im(vec![vec![-1, 0], vec![-2, -1], vec![-1, 0]]));
    }

    #[test]
    fn identity_matrix() {
        let r = GradedRing::new(&[("x", 2), ("y", 4)]).unwrap();
        for n in 0..10 {
            let k = r.hilbert(n) as usize;
            assert_eq!(RingMap::identity(&r).map_matrix(n), Matrix::identity(k));
        }
        assert_eq!(kernel_hilbert(&[RingMap::identity(&r)], 8).unwrap(), 0);
    }

    #[test]
    fn degree_mismatch() {
        let a = GradedRing::new(&[("a1", 2), ("a2", 4)]).unwrap();
        let n = GradedRing::new(&[("x", 2)]).unwrap();
        assert!(matches!(RingMap::parse(&a, &n, &["x", "x"], Sign::Plus), Err(Error::DegreeMismatch(_))));
        assert!(matches!(RingMap::parse(&a, &n, &["x", "x^2 + x"], Sign::Plus), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn ideal_kernels() {
        // K_C = ker(Z[x1..x4] → Z[x1,x2,y] ⊕ Z[x1,x2,y']) sends x1 x2 to zero on both sides
        let c = GradedRing::new(&[("cDL", 2), ("cbL", 2), ("cDR", 2), ("cbR", 2)]).unwrap();
        let nl = GradedRing::new(&[("nDL", 2), ("nbL", 2), ("n0R", 2)]).unwrap();
        let nr = GradedRing::new(&[("nDR", 2), ("nbR", 2), ("n0L", 2)]).unwrap();
        let fl = RingMap::parse(&c, &nl, &["nDL", "nbL", "0", "n0R"], Sign::Plus).unwrap();
        let fr = RingMap::parse(&c, &nr, &["0", "n0L", "nDR", "nbR"], Sign::Minus).unwrap();
        assert_eq!(kernel_hilbert(&[fl.clone(), fr.clone()], 4).unwrap(), 1);
        assert_eq!(kernel_hilbert(&[fl, fr], 2).unwrap(), 0);
    }

    #[test]
    fn composition_matches_matrix_product() {
        let f = whitney(Sign::Minus);
        let n = f.target.clone();
        let t = GradedRing::new(&[("t", 2)]).unwrap();
        let g = RingMap::parse(&n, &t, &["2*t", "-t"], Sign::Plus).unwrap();
        let gf = g.compose(&f).unwrap();
        for d in 0..12 {
            assert_eq!(gf.map_matrix(d), g.map_matrix(d).mul(&f.map_matrix(d)));
        }
    }
}
