//! Smith normal form over the integers.
//!
//! Exact pivoting: each step moves a smallest non-zero entry of the trailing
//! block to the diagonal, clears its row and column by Euclidean reduction and
//! restarts whenever a remainder survives. A final divisibility sweep enforces
//! `d₁ | d₂ | …`. Row/column operations touch only the non-zero entries of the
//! pivot row/column, so the sparse 0/±1 matrices of the spectral engine stay cheap.

use num_integer::Integer;
use num_traits::Signed;

use super::matrix::Matrix;
use super::scalar::Ring;

pub trait IntRing: Ring + Integer + Signed {}
impl<T: Ring + Integer + Signed> IntRing for T {}

#[derive(Clone, Debug)]
pub struct Snf<T> {
    /// Positive diagonal entries, `d₁ | d₂ | … | d_rank`.
    pub invariants: Vec<T>,
    pub rank: usize,
    /// Unimodular `U` (rows × rows) and `V` (cols × cols) with `U·M·V = D`,
    /// present when transforms were requested.
    pub u: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
}

impl<T: IntRing> Snf<T> {
    /// Invariant factors different from one.
    pub fn torsion(&self) -> Vec<T> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
}

impl<T: IntRing> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    /// row_dst += f · row_src
    fn add_row(&mut self, dst: usize, src: usize, f: &T, from_col: usize) {
        add_row_to(&mut self.a, dst, src, f, from_col);
        if let Some(u) = &mut self.u {
            add_row_to(u, dst, src, f, 0);
        }
    }

    /// col_dst += f · col_src
    fn add_col(&mut self, dst: usize, src: usize, f: &T, from_row: usize) {
        add_col_to(&mut self.a, dst, src, f, from_row);
        if let Some(v) = &mut self.v {
            add_col_to(v, dst, src, f, 0);
        }
    }

    fn negate_row(&mut self, i: usize) {
        let f = -T::one() - T::one();
        self.add_row(i, i, &f, 0);
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                    if x.is_one() || (-x.clone()).is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clears row and column `t`; returns false if a remainder survived and
    /// was moved onto the pivot.
    fn clear_cross(&mut self, t: usize) -> bool {
        let (m, n) = self.a.shape();
        let mut clean = true;
        for i in t + 1..m {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
            self.add_row(i, t, &-q, t);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
            self.add_col(j, t, &-q, t);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        if clean {
            return true;
        }
        // move the smallest surviving remainder onto the pivot
        let mut best = (t, t);
        for i in t + 1..m {
            if !self.a[(i, t)].is_zero() && self.a[(i, t)].abs() < self.a[best].abs() {
                best = (i, t);
            }
        }
        for j in t + 1..n {
            if !self.a[(t, j)].is_zero() && self.a[(t, j)].abs() < self.a[best].abs() {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
        false
    }

    fn run(mut self) -> Snf<T> {
        let (m, n) = self.a.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_cross(t) {
                    continue;
                }
                let p = self.a[(t, t)].clone();
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a[(i, j)].is_zero() && !self.a[(i, j)].is_multiple_of(&p))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &T::one(), t),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        let invariants: Vec<T> = (0..t).map(|i| self.a[(i, i)].clone()).collect();
        Snf { rank: invariants.len(), invariants, u: self.u, v: self.v }
    }
}

fn add_row_to<T: IntRing>(a: &mut Matrix<T>, dst: usize, src: usize, f: &T, from_col: usize) {
    if f.is_zero() {
        return;
    }
    for j in from_col..a.cols() {
        let s = &a[(src, j)];
        if !s.is_zero() {
            let v = a[(dst, j)].clone() + f.clone() * s.clone();
            a[(dst, j)] = v;
        }
    }
}

fn add_col_to<T: IntRing>(a: &mut Matrix<T>, dst: usize, src: usize, f: &T, from_row: usize) {
    if f.is_zero() {
        return;
    }
    for i in from_row..a.rows() {
        let s = &a[(i, src)];
        if !s.is_zero() {
            let v = a[(i, dst)].clone() + f.clone() * s.clone();
            a[(i, dst)] = v;
        }
    }
}

/// Smith normal form with unimodular transforms `U·M·V = diag(d)`.
pub fn smith_normal_form<T: IntRing>(m: &Matrix<T>) -> Snf<T> {
    Reducer {
        a: m.clone(),
        u: Some(Matrix::identity(m.rows())),
        v: Some(Matrix::identity(m.cols())),
    }
    .run()
}

/// Invariant factors only; skips the transform bookkeeping.
pub fn invariant_factors<T: IntRing>(m: &Matrix<T>) -> Snf<T> {
    Reducer { a: m.clone(), u: None, v: None }.run()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInfo<T> {
    pub kernel_rank: usize,
    pub rank: usize,
    /// Torsion invariants of the cokernel.
    pub cokernel_torsion: Vec<T>,
}

/// Kernel rank and cokernel torsion of an integer matrix viewed as `Zⁿ → Zᵐ`.
pub fn kernel_rank_over_z<T: IntRing>(m: &Matrix<T>) -> KernelInfo<T> {
    let snf = invariant_factors(m);
    KernelInfo { kernel_rank: m.cols() - snf.rank, rank: snf.rank, cokernel_torsion: snf.torsion() }
}

/// Determinant by exact fraction-free elimination (Bareiss).
pub fn determinant<T: IntRing>(m: &Matrix<T>) -> T {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return T::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn im(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_transforms(m: &Matrix<BigInt>, s: &Snf<BigInt>) {
        let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
        let d = u.mul(m).mul(v);
        let mut expect = Matrix::zeros(m.rows(), m.cols());
        for (i, x) in s.invariants.iter().enumerate() {
            expect[(i, i)] = x.clone();
        }
        assert_eq!(d, expect);
        assert!(determinant(u).abs() == BigInt::from(1));
        assert!(determinant(v).abs() == BigInt::from(1));
    }

    #[test]
    fn diagonal_two_three() {
        let m = im(vec![vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariants, ints(&[1, 6]));
        assert_eq!(s.rank, 2);
        check_transforms(&m, &s);
    }

    #[test]
    fn zero_matrix() {
        let m = im(vec![vec![0, 0, 0], vec![0, 0, 0]]);
        let s = smith_normal_form(&m);
        assert!(s.invariants.is_empty());
        assert_eq!(s.rank, 0);
        check_transforms(&m, &s);
    }

    #[test]
    fn whitney_sum_degree_four() {
        let m = im(vec![vec![1, 0], vec![2, 1], vec![1, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariants, ints(&[1, 1]));
        assert_eq!(s.rank, 2);
        check_transforms(&m, &s);
    }

    #[test]
    fn kernel_ranks() {
        let k = kernel_rank_over_z(&im(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!((k.kernel_rank, k.cokernel_torsion.len()), (0, 0));
        let k = kernel_rank_over_z(&im(vec![vec![1, -1]]));
        assert_eq!(k.kernel_rank, 1);
        let k = kernel_rank_over_z(&im(vec![vec![2]]));
        assert_eq!(k.kernel_rank, 0);
        assert_eq!(k.cokernel_torsion, ints(&[2]));
    }

    #[test]
    fn works_for_machine_integers() {
        let m: Matrix<i64> = Matrix::from_rows(vec![vec![4, 6], vec![6, 9], vec![2, 3]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.invariants, vec![1]);
        let m: Matrix<i64> = Matrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(invariant_factors(&m).invariants, vec![2, 6, 12]);
    }
}
