//! Special subspaces (plane) and special pairs (blow-up) for charge ≤ 2,
//! and the non-degeneracy test they induce.
//!
//! Candidate lines are found over one quadratic extension of the scalars and
//! then checked against the defining inclusions exactly.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{eig2, Field, Matrix, QuadExt};

use super::config::{Config0, Config1};

pub type Vec2<F> = [QuadExt<F>; 2];

/// A special line `W′` (plane) or pair of lines `(V′, W′)` (blow-up).
#[derive(Clone, Debug)]
pub struct SpecialSubspace<F> {
    /// Spanning vector of `W′`.
    pub w: Vec2<F>,
    /// Spanning vector of `V′` for pairs.
    pub v: Option<Vec2<F>>,
    pub b_special: bool,
    pub c_special: bool,
}

#[derive(Clone, Debug)]
pub struct SpecialReport<F> {
    /// Proper non-trivial special lines or pairs (one representative per
    /// family when a whole pencil qualifies).
    pub lines: Vec<SpecialSubspace<F>>,
    /// `b = 0`, i.e. the zero subspace is b-special.
    pub b_zero: bool,
    /// `c = 0`, i.e. the whole space is c-special.
    pub c_zero: bool,
}

impl<F: Field> SpecialReport<F> {
    pub fn nondegenerate(&self) -> bool {
        !self.b_zero && !self.c_zero && self.lines.is_empty()
    }
}

pub(crate) fn q<F: Field>(x: &F) -> QuadExt<F> {
    QuadExt::base(x.clone())
}

pub(crate) fn is_zero2<F: Field>(v: &Vec2<F>) -> bool {
    v[0].is_zero() && v[1].is_zero()
}

pub(crate) fn parallel<F: Field>(u: &Vec2<F>, v: &Vec2<F>) -> bool {
    (u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone()).is_zero()
}

pub(crate) fn apply<F: Field>(m: &Matrix<F>, v: &Vec2<F>) -> Vec2<F> {
    std::array::from_fn(|i| q(&m[(i, 0)]) * v[0].clone() + q(&m[(i, 1)]) * v[1].clone())
}

fn basis<F: Field>(i: usize) -> Vec2<F> {
    std::array::from_fn(|j| if i == j { QuadExt::one() } else { QuadExt::zero() })
}

fn cols<F: Field>(m: &Matrix<F>) -> Vec<Vec2<F>> {
    (0..m.cols()).map(|j| [q(&m[(0, j)]), q(&m[(1, j)])]).collect()
}

/// Every column of `m` lies in `span{v}`.
fn image_in<F: Field>(m: &Matrix<F>, v: &Vec2<F>) -> bool {
    (0..m.cols()).all(|j| parallel(&[q(&m[(0, j)]), q(&m[(1, j)])], v))
}

fn kills<F: Field>(c: &Matrix<F>, w: &Vec2<F>) -> bool {
    (0..c.rows()).all(|i| (q(&c[(i, 0)]) * w[0].clone() + q(&c[(i, 1)]) * w[1].clone()).is_zero())
}

/// Eigenlines of a 2×2 matrix, `None` when it is scalar (every line).
fn eigenlines<F: Field>(m: &Matrix<F>) -> Result<Option<Vec<Vec2<F>>>> {
    let e = eig2(m)?;
    if e.pairs.iter().any(|p| p.vectors.len() == 2) {
        return Ok(None);
    }
    Ok(Some(e.pairs.into_iter().map(|p| p.vectors[0].clone()).collect()))
}

/// Non-zero column of a rank-one matrix.
fn image_line<F: Field>(m: &Matrix<F>) -> Option<Vec2<F>> {
    cols(m).into_iter().find(|v| !is_zero2(v))
}

/// Basis of the kernel of a 1×2 or k×2 matrix, lifted.
fn kernel_lines<F: Field>(m: &Matrix<F>) -> Vec<Vec2<F>> {
    m.kernel().into_iter().map(|v| [q(&v[0]), q(&v[1])]).collect()
}

fn push_unique<F: Field>(out: &mut Vec<Vec2<F>>, w: Vec2<F>) {
    if !is_zero2(&w) && !out.iter().any(|u| u[0].compatible(&w[0]) && u[1].compatible(&w[1]) && parallel(u, &w)) {
        out.push(w);
    }
}

fn check_charge(k: usize) -> Result<()> {
    if k > 2 {
        return Err(Error::ChargeTooLarge(k));
    }
    Ok(())
}

/// Candidates when every line is invariant: lines forced by `b` or `c`.
fn framing_driven<F: Field>(b: &Matrix<F>, c: &Matrix<F>) -> Vec<Vec2<F>> {
    let mut out = Vec::new();
    if b.rank() == 1 {
        push_unique(&mut out, image_line(b).expect("rank one"));
    }
    if c.rank() == 1 {
        for w in kernel_lines(c) {
            push_unique(&mut out, w);
        }
    }
    if b.is_zero() || c.is_zero() {
        push_unique(&mut out, basis(0));
        push_unique(&mut out, basis(1));
    }
    out
}

impl<F: Field> Config0<F> {
    pub fn special_subspaces(&self) -> Result<SpecialReport<F>> {
        check_charge(self.k())?;
        let b_zero = self.k() > 0 && self.b.is_zero();
        let c_zero = self.k() > 0 && self.c.is_zero();
        let mut lines = Vec::new();
        if self.k() == 2 {
            let candidates = match eigenlines(&self.a1)? {
                Some(ls) => ls.into_iter().filter(|w| parallel(&apply(&self.a2, w), w)).collect(),
                None => match eigenlines(&self.a2)? {
                    Some(ls) => ls,
                    None => framing_driven(&self.b, &self.c),
                },
            };
            for w in candidates {
                let b_special = image_in(&self.b, &w);
                let c_special = kills(&self.c, &w);
                if b_special || c_special {
                    lines.push(SpecialSubspace { w, v: None, b_special, c_special });
                }
            }
        }
        Ok(SpecialReport { lines, b_zero, c_zero })
    }

    pub fn nondegenerate(&self) -> Result<bool> {
        Ok(self.special_subspaces()?.nondegenerate())
    }
}

/// Lines `w` with `dim span{a₁w, a₂w} ≤ 1`: roots of the binary quadratic
/// form `det[a₁w | a₂w]`, or `None` if it vanishes identically.
fn rank_one_lines<F: Field>(a1: &Matrix<F>, a2: &Matrix<F>) -> Option<Vec<Vec2<F>>> {
    let det = |i: usize, j: usize| a1[(0, i)].clone() * a2[(1, j)].clone() - a1[(1, i)].clone() * a2[(0, j)].clone();
    let (al, be, ga) = (det(0, 0), det(0, 1) + det(1, 0), det(1, 1));
    if al.is_zero() && be.is_zero() && ga.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    if ga.is_zero() {
        // s·(α s + β t)
        push_unique(&mut out, basis(1));
        push_unique(&mut out, [q(&be), q(&-al)]);
    } else {
        let two = F::from_i64(2);
        let disc = be.clone() * be.clone() - F::from_i64(4) * al * ga.clone();
        let root = QuadExt::sqrt_of(disc);
        for sign in [1, -1] {
            let t = (q(&-be.clone()) + root.clone() * QuadExt::from_i64(sign)) / q(&(two.clone() * ga.clone()));
            push_unique(&mut out, [QuadExt::one(), t]);
        }
    }
    Some(out)
}

impl<F: Field> Config1<F> {
    fn pair_candidates(&self) -> Result<Vec<Vec2<F>>> {
        let da1 = self.d.mul(&self.a1);
        let da2 = self.d.mul(&self.a2);
        Ok(match eigenlines(&da1)? {
            Some(ls) => ls.into_iter().filter(|w| parallel(&apply(&da2, w), w)).collect(),
            None => match eigenlines(&da2)? {
                Some(ls) => ls,
                None => match rank_one_lines(&self.a1, &self.a2) {
                    Some(ls) => ls,
                    None => {
                        let mut out = Vec::new();
                        if self.c.rank() == 1 {
                            for w in kernel_lines(&self.c) {
                                push_unique(&mut out, w);
                            }
                        }
                        if self.c.is_zero() {
                            push_unique(&mut out, basis(0));
                            push_unique(&mut out, basis(1));
                        }
                        if self.b.rank() == 1 {
                            let v = image_line(&self.b).expect("rank one");
                            let dv = apply(&self.d, &v);
                            if !is_zero2(&dv) {
                                push_unique(&mut out, dv);
                            } else {
                                // u·aᵢ·w = 0 with u annihilating v
                                let u = [v[1].clone(), -v[0].clone()];
                                let lift = self.a1.map(|x| q(x));
                                let lift2 = self.a2.map(|x| q(x));
                                let row = |a: &Matrix<QuadExt<F>>| {
                                    vec![
                                        u[0].clone() * a[(0, 0)].clone() + u[1].clone() * a[(1, 0)].clone(),
                                        u[0].clone() * a[(0, 1)].clone() + u[1].clone() * a[(1, 1)].clone(),
                                    ]
                                };
                                let sys = Matrix::from_rows(vec![row(&lift), row(&lift2)]).expect("2x2");
                                for w in sys.kernel() {
                                    push_unique(&mut out, [w[0].clone(), w[1].clone()]);
                                }
                            }
                        }
                        if self.b.is_zero() {
                            push_unique(&mut out, basis(0));
                            push_unique(&mut out, basis(1));
                        }
                        out
                    }
                },
            },
        })
    }

    /// Possible `V′` for a given `W′ = span{w}`.
    fn v_options(&self, w: &Vec2<F>) -> Vec<Vec2<F>> {
        let p1 = apply(&self.a1, w);
        let p2 = apply(&self.a2, w);
        if !parallel(&p1, &p2) {
            return Vec::new();
        }
        if !is_zero2(&p1) {
            return vec![p1];
        }
        if !is_zero2(&p2) {
            return vec![p2];
        }
        let mut out = Vec::new();
        if self.b.rank() == 1 {
            push_unique(&mut out, image_line(&self.b).expect("rank one"));
        }
        // preimage of span{w} under d
        let u = [w[1].clone(), -w[0].clone()];
        let ud: Vec<QuadExt<F>> = (0..2)
            .map(|j| u[0].clone() * q(&self.d[(0, j)]) + u[1].clone() * q(&self.d[(1, j)]))
            .collect();
        for v in Matrix::row(ud).kernel() {
            push_unique(&mut out, [v[0].clone(), v[1].clone()]);
        }
        out
    }

    pub fn special_subspaces(&self) -> Result<SpecialReport<F>> {
        check_charge(self.k())?;
        let b_zero = self.k() > 0 && self.b.is_zero();
        let c_zero = self.k() > 0 && self.c.is_zero();
        let mut lines = Vec::new();
        if self.k() == 2 {
            for w in self.pair_candidates()? {
                let c_special = kills(&self.c, &w);
                for v in self.v_options(&w) {
                    let dv = apply(&self.d, &v);
                    if !parallel(&dv, &w) {
                        continue;
                    }
                    let b_special = image_in(&self.b, &v);
                    if b_special || c_special {
                        lines.push(SpecialSubspace { w: w.clone(), v: Some(v), b_special, c_special });
                        break;
                    }
                }
            }
        }
        Ok(SpecialReport { lines, b_zero, c_zero })
    }

    pub fn nondegenerate(&self) -> Result<bool> {
        Ok(self.special_subspaces()?.nondegenerate())
    }
}

/// Checks the defining inclusions of a reported line or pair directly.
pub fn verify_special0<F: Field>(m: &Config0<F>, s: &SpecialSubspace<F>) -> bool {
    let inv = parallel(&apply(&m.a1, &s.w), &s.w) && parallel(&apply(&m.a2, &s.w), &s.w);
    inv && (!s.b_special || image_in(&m.b, &s.w)) && (!s.c_special || kills(&m.c, &s.w))
}

pub fn verify_special1<F: Field>(m: &Config1<F>, s: &SpecialSubspace<F>) -> bool {
    let Some(v) = &s.v else { return false };
    let inv = parallel(&apply(&m.a1, &s.w), v)
        && parallel(&apply(&m.a2, &s.w), v)
        && parallel(&apply(&m.d, v), &s.w);
    inv && (!s.b_special || image_in(&m.b, v)) && (!s.c_special || kills(&m.c, &s.w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational as G;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<G> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(G::from).collect()).collect()).unwrap()
    }

    fn g(v: i64) -> G {
        G::from(v)
    }

    #[test]
    fn charge_one_flags() {
        let ok = Config0::charge_one(g(1), g(2), vec![g(1), g(0)], vec![g(0), g(1)]).unwrap();
        assert!(ok.special_subspaces().unwrap().lines.is_empty());
        assert!(ok.nondegenerate().unwrap());
        let no_c = Config0::charge_one(g(1), g(2), vec![g(1), g(0)], vec![g(0), g(0)]).unwrap();
        assert!(!no_c.nondegenerate().unwrap());
        assert!(no_c.special_subspaces().unwrap().c_zero);
    }

    #[test]
    fn block_sum_with_zero_c_block() {
        // (0,0,(1,0),(0,1)ᵀ) ⊕ (1,0,(0,1),0)
        let cfg = Config0::new(
            m(vec![vec![0, 0], vec![0, 1]]),
            m(vec![vec![0, 0], vec![0, 0]]),
            m(vec![vec![1, 0], vec![0, 1]]),
            m(vec![vec![0, 0], vec![1, 0]]),
        )
        .unwrap();
        let rep = cfg.special_subspaces().unwrap();
        assert_eq!(rep.lines.len(), 1);
        let s = &rep.lines[0];
        assert!(s.c_special && !s.b_special);
        assert!(parallel(&s.w, &basis(1)));
        assert!(verify_special0(&cfg, s));
        assert!(!cfg.nondegenerate().unwrap());
    }

    #[test]
    fn rank_two_b_has_no_b_special_line() {
        let cfg = Config0::new(
            m(vec![vec![0, 0], vec![0, 0]]),
            m(vec![vec![0, 0], vec![0, 0]]),
            m(vec![vec![1, 0], vec![0, 1]]),
            m(vec![vec![1, 0], vec![0, 1]]),
        )
        .unwrap();
        let rep = cfg.special_subspaces().unwrap();
        assert!(rep.lines.iter().all(|s| !s.b_special));
        assert!(rep.lines.is_empty());
    }

    #[test]
    fn irrational_invariant_lines() {
        // a1 has eigenlines over Q(√2); b lies in none of them, c kills none
        let cfg = Config0::new(
            m(vec![vec![0, 2], vec![1, 0]]),
            m(vec![vec![0, 0], vec![0, 0]]),
            m(vec![vec![1], vec![0]]),
            m(vec![vec![0, 0]]),
        )
        .unwrap();
        let rep = cfg.special_subspaces().unwrap();
        assert_eq!(rep.lines.len(), 2);
        assert!(rep.lines.iter().all(|s| s.c_special && s.w[1].discriminant().is_some()));
        assert!(rep.lines.iter().all(|s| verify_special0(&cfg, s)));
    }

    #[test]
    fn charge_three_rejected() {
        let z = |r, c| Matrix::<G>::zeros(r, c);
        let cfg = Config0::new(z(3, 3), z(3, 3), z(3, 1), z(1, 3)).unwrap();
        assert!(matches!(cfg.special_subspaces(), Err(Error::ChargeTooLarge(3))));
    }

    #[test]
    fn nondegenerate_blowup_pair() {
        // the ⊞_L example with every framing vector non-zero
        let cfg = Config1::new(
            m(vec![vec![2, 0], vec![0, 1]]),
            m(vec![vec![3, 1], vec![-1, 0]]),
            m(vec![vec![0, 0], vec![0, 1]]),
            m(vec![vec![1, 0], vec![0, 1]]),
            m(vec![vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        assert!(cfg.nondegenerate().unwrap());
    }

    #[test]
    fn degenerate_blowup_pair() {
        // second block has c'' = 0 so (span e₂, span e₂) is c-special
        let cfg = Config1::new(
            m(vec![vec![2, 0], vec![0, 1]]),
            m(vec![vec![3, 0], vec![-1, 0]]),
            m(vec![vec![0, 0], vec![0, 1]]),
            m(vec![vec![1, 0], vec![0, 1]]),
            m(vec![vec![0, 0], vec![1, 0]]),
        )
        .unwrap();
        assert!(cfg.integrability_residual().is_zero());
        let rep = cfg.special_subspaces().unwrap();
        assert!(!rep.nondegenerate());
        assert!(rep.lines.iter().all(|s| verify_special1(&cfg, s)));
        assert!(rep.lines.iter().any(|s| s.c_special && parallel(&s.w, &basis(1))));
    }
}
