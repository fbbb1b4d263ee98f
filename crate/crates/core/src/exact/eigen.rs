//! Exact eigen-analysis of 2×2 matrices.
//!
//! Roots of `t² − tr·t + det` are computed with the quadratic formula; the
//! discriminant's square root is taken in the base field when it exists and
//! in a single quadratic extension otherwise.

use num_traits::Zero;

use super::matrix::Matrix;
use super::quad::QuadExt;
use super::scalar::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EigenPair<F> {
    pub value: QuadExt<F>,
    /// Eigenvectors spanning the eigenspace (two only for scalar matrices).
    pub vectors: Vec<[QuadExt<F>; 2]>,
}

#[derive(Clone, Debug)]
pub struct Eig2<F> {
    /// Both roots with multiplicity; `pairs` lists each distinct root once.
    pub values: [QuadExt<F>; 2],
    pub pairs: Vec<EigenPair<F>>,
    pub distinct: bool,
    /// True when both roots lie in the base field.
    pub in_base: bool,
    pub diagonalizable: bool,
}

impl<F: Field> Eig2<F> {
    /// Eigenvalues as base-field elements, if they are.
    pub fn base_values(&self) -> Option<[F; 2]> {
        Some([self.values[0].to_base()?, self.values[1].to_base()?])
    }
}

/// Non-zero vector spanning `ker(A − λ)`, or both basis vectors when `A = λ`.
fn eigenvectors<F: Field>(a: &Matrix<QuadExt<F>>, lambda: &QuadExt<F>) -> Vec<[QuadExt<F>; 2]> {
    let m00 = a[(0, 0)].clone() - lambda.clone();
    let m01 = a[(0, 1)].clone();
    let m10 = a[(1, 0)].clone();
    let m11 = a[(1, 1)].clone() - lambda.clone();
    if !m00.is_zero() || !m01.is_zero() {
        vec![[m01, -m00]]
    } else if !m10.is_zero() || !m11.is_zero() {
        vec![[-m11, m10]]
    } else {
        vec![
            [QuadExt::from_i64(1), QuadExt::zero()],
            [QuadExt::zero(), QuadExt::from_i64(1)],
        ]
    }
}

pub fn lift<F: Field>(a: &Matrix<F>) -> Matrix<QuadExt<F>> {
    a.map(|x| QuadExt::base(x.clone()))
}

/// Eigenvalues and eigenvectors of a 2×2 matrix.
pub fn eig2<F: Field>(a: &Matrix<F>) -> Result<Eig2<F>> {
    if a.shape() != (2, 2) {
        return Err(Error::ShapeMismatch(format!("eig2 needs 2x2, got {:?}", a.shape())));
    }
    let tr = a.trace();
    let det = a.det2();
    let two = F::from_i64(2);
    // λ = tr/2 ± √(tr²/4 − det)
    let half_tr = tr / two;
    let disc = half_tr.clone() * half_tr.clone() - det;
    let half_root = QuadExt::sqrt_of(disc.clone());
    let half_tr = QuadExt::base(half_tr);
    let l1 = half_tr.clone() + half_root.clone();
    let l2 = half_tr - half_root;
    let lifted = lift(a);
    let distinct = !disc.is_zero();
    let mut pairs = vec![EigenPair { vectors: eigenvectors(&lifted, &l1), value: l1.clone() }];
    if distinct {
        pairs.push(EigenPair { vectors: eigenvectors(&lifted, &l2), value: l2.clone() });
    }
    let diagonalizable = distinct || pairs[0].vectors.len() == 2;
    Ok(Eig2 { in_base: l1.is_base() && l2.is_base(), values: [l1, l2], pairs, distinct, diagonalizable })
}
