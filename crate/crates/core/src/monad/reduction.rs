//! Donaldson–Uhlenbeck canonical reduction and point extraction.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, QuadExt};

use super::config::{Config0, Config1};
use super::special::{SpecialSubspace, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Plane,
    Blowup,
}

/// A point where charge has bubbled off: `(λ₁, λ₂)` and, on the blow-up, a
/// direction `[μ₁ : μ₂]` (normalized so its first non-zero entry is 1).
#[derive(Clone, Debug)]
pub struct DUPoint<F> {
    pub surface: Surface,
    pub lambda: [QuadExt<F>; 2],
    pub mu: Option<[QuadExt<F>; 2]>,
}

impl<F: Field> PartialEq for DUPoint<F> {
    fn eq(&self, o: &Self) -> bool {
        self.surface == o.surface && self.lambda == o.lambda && self.mu == o.mu
    }
}

impl<F: Field> DUPoint<F> {
    pub fn plane(lambda: [QuadExt<F>; 2]) -> Self {
        Self { surface: Surface::Plane, lambda, mu: None }
    }

    /// Point of a diagonal blow-up block `(α₁, α₂, δ)`: `λᵢ = δαᵢ`, `μ = [α₂ : −α₁]`.
    pub fn blowup(alpha: [QuadExt<F>; 2], delta: QuadExt<F>) -> Self {
        let lambda = [delta.clone() * alpha[0].clone(), delta * alpha[1].clone()];
        let mu = [alpha[1].clone(), -alpha[0].clone()];
        let mu = if mu[0].is_zero() && mu[1].is_zero() {
            None
        } else {
            let s = if mu[0].is_zero() { mu[1].clone() } else { mu[0].clone() };
            Some([mu[0].clone() / s.clone(), mu[1].clone() / s])
        };
        Self { surface: Surface::Blowup, lambda, mu }
    }

    /// `μ₁λ₁ + μ₂λ₂ = 0`.
    pub fn on_incidence_variety(&self) -> bool {
        match &self.mu {
            Some(mu) => (mu[0].clone() * self.lambda[0].clone() + mu[1].clone() * self.lambda[1].clone()).is_zero(),
            None => self.surface == Surface::Plane || self.lambda.iter().all(|l| l.is_zero()),
        }
    }

    /// Shift `λ` by `−x`.
    pub fn translate(&self, x: &[F; 2]) -> Self {
        let lambda = [
            self.lambda[0].clone() - QuadExt::base(x[0].clone()),
            self.lambda[1].clone() - QuadExt::base(x[1].clone()),
        ];
        Self { lambda, ..self.clone() }
    }
}

impl<F: Field> fmt::Display for DUPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda[0], self.lambda[1])?;
        if let Some(mu) = &self.mu {
            write!(f, " [{} : {}]", mu[0], mu[1])?;
        }
        Ok(())
    }
}

/// Order-insensitive comparison of point lists.
pub fn same_points<F: Field>(a: &[DUPoint<F>], b: &[DUPoint<F>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|p| match (0..b.len()).find(|&j| !used[j] && b[j] == *p) {
        Some(j) => {
            used[j] = true;
            true
        }
        None => false,
    })
}

/// Canonical completely reducible representative: a non-degenerate part, the
/// diagonal blocks (with zero framing) and the points they encode.
#[derive(Clone, Debug)]
pub struct Reduction<C, F> {
    pub reduced: Option<C>,
    pub diagonal: Vec<C>,
    pub points: Vec<DUPoint<F>>,
}

type Q<F> = QuadExt<F>;

fn complement<F: Field>(w: &Vec2<F>) -> Vec2<F> {
    if w[0].is_zero() {
        [Q::one(), Q::zero()]
    } else {
        [Q::zero(), Q::one()]
    }
}

fn frame<F: Field>(w: &Vec2<F>) -> Matrix<Q<F>> {
    let e = complement(w);
    Matrix::from_rows(vec![vec![w[0].clone(), e[0].clone()], vec![w[1].clone(), e[1].clone()]]).expect("2x2")
}

fn framing_nonzero<F: Field>(b: &Matrix<F>, c: &Matrix<F>) -> bool {
    !b.is_zero() && !c.is_zero()
}

fn sub1<F: Field>(m: &Matrix<F>, i: usize) -> Matrix<F> {
    m.block(i, i, 1, 1)
}

impl<F: Field> Config0<F> {
    fn zero_framing(&self) -> Self {
        let (k, r) = (self.k(), self.r());
        Self { a1: self.a1.clone(), a2: self.a2.clone(), b: Matrix::zeros(k, r), c: Matrix::zeros(r, k) }
    }

    /// Associated graded of the flag `span{w} ⊂ W` as two charge-one blocks.
    fn graded(&self, w: &Vec2<F>) -> Result<[Config0<Q<F>>; 2]> {
        let t = self.lift().act(&frame(w))?;
        debug_assert!(t.a1[(1, 0)].is_zero() && t.a2[(1, 0)].is_zero());
        Ok(std::array::from_fn(|i| Config0 {
            a1: sub1(&t.a1, i),
            a2: sub1(&t.a2, i),
            b: t.b.block(i, 0, 1, t.b.cols()),
            c: t.c.block(0, i, t.c.rows(), 1),
        }))
    }

    pub fn canonical_reduction(&self) -> Result<Reduction<Config0<Q<F>>, F>> {
        if !self.is_integrable() {
            return Err(Error::NotIntegrable);
        }
        let rep = self.special_subspaces()?;
        if rep.nondegenerate() {
            return Ok(Reduction { reduced: Some(self.lift()), diagonal: vec![], points: vec![] });
        }
        let pieces: Vec<Config0<Q<F>>> = match self.k() {
            1 => vec![self.lift()],
            _ => {
                let line = pick_line(&rep.lines)?;
                self.graded(&line.w)?.into()
            }
        };
        let mut out = Reduction { reduced: None, diagonal: vec![], points: vec![] };
        for p in pieces {
            if framing_nonzero(&p.b, &p.c) {
                out.reduced = Some(p);
            } else {
                out.points.push(DUPoint::plane([p.a1[(0, 0)].clone(), p.a2[(0, 0)].clone()]));
                out.diagonal.push(p.zero_framing());
            }
        }
        Ok(out)
    }
}

fn pick_line<F: Field>(lines: &[SpecialSubspace<F>]) -> Result<&SpecialSubspace<F>> {
    lines
        .first()
        .ok_or_else(|| Error::NoSpecialSubspace("degenerate configuration without an invariant line".into()))
}

impl<F: Field> Config1<F> {
    fn zero_framing(&self) -> Self {
        let (k, r) = (self.k(), self.r());
        Self { b: Matrix::zeros(k, r), c: Matrix::zeros(r, k), ..self.clone() }
    }

    fn graded(&self, v: &Vec2<F>, w: &Vec2<F>) -> Result<[Config1<Q<F>>; 2]> {
        let t = self.lift().act(&frame(v), &frame(w))?;
        debug_assert!(t.a1[(1, 0)].is_zero() && t.d[(1, 0)].is_zero());
        Ok(std::array::from_fn(|i| Config1 {
            a1: sub1(&t.a1, i),
            a2: sub1(&t.a2, i),
            d: sub1(&t.d, i),
            b: t.b.block(i, 0, 1, t.b.cols()),
            c: t.c.block(0, i, t.c.rows(), 1),
        }))
    }

    pub fn canonical_reduction(&self) -> Result<Reduction<Config1<Q<F>>, F>> {
        if !self.is_integrable() {
            return Err(Error::NotIntegrable);
        }
        let rep = self.special_subspaces()?;
        if rep.nondegenerate() {
            return Ok(Reduction { reduced: Some(self.lift()), diagonal: vec![], points: vec![] });
        }
        let pieces: Vec<Config1<Q<F>>> = match self.k() {
            1 => vec![self.lift()],
            _ => {
                let pair = pick_line(&rep.lines)?;
                self.graded(pair.v.as_ref().expect("pair"), &pair.w)?.into()
            }
        };
        let mut out = Reduction { reduced: None, diagonal: vec![], points: vec![] };
        for p in pieces {
            if framing_nonzero(&p.b, &p.c) {
                out.reduced = Some(p);
            } else {
                let alpha = [p.a1[(0, 0)].clone(), p.a2[(0, 0)].clone()];
                out.points.push(DUPoint::blowup(alpha, p.d[(0, 0)].clone()));
                out.diagonal.push(p.zero_framing());
            }
        }
        Ok(out)
    }
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

    fn qg(v: i64) -> Q<G> {
        Q::base(g(v))
    }

    #[test]
    fn charge_one_ideal_point() {
        let cfg = Config0::charge_one(g(3), g(-2), vec![g(0), g(0)], vec![g(0), g(0)]).unwrap();
        let red = cfg.canonical_reduction().unwrap();
        assert!(red.reduced.is_none());
        assert_eq!(red.points, vec![DUPoint::plane([qg(3), qg(-2)])]);
    }

    #[test]
    fn nondegenerate_is_its_own_reduction() {
        let cfg = Config0::charge_one(g(3), g(-2), vec![g(1), g(0)], vec![g(0), g(1)]).unwrap();
        let red = cfg.canonical_reduction().unwrap();
        assert_eq!(red.reduced, Some(cfg.lift()));
        assert!(red.points.is_empty());
    }

    #[test]
    fn block_sum_with_ideal_block() {
        // (0,0,(1,0),(0,1)ᵀ) ⊕ (5,7,0,0)
        let cfg = Config0::new(
            m(vec![vec![0, 0], vec![0, 5]]),
            m(vec![vec![0, 0], vec![0, 7]]),
            m(vec![vec![1, 0], vec![0, 0]]),
            m(vec![vec![0, 0], vec![1, 0]]),
        )
        .unwrap();
        let red = cfg.canonical_reduction().unwrap();
        let reduced = red.reduced.expect("charge one survives");
        assert_eq!(reduced.k(), 1);
        assert_eq!(red.points, vec![DUPoint::plane([qg(5), qg(7)])]);
    }

    #[test]
    fn zero_framing_semisimplifies() {
        let cfg = Config0::new(
            m(vec![vec![1, 1], vec![0, 1]]),
            m(vec![vec![2, 0], vec![0, 2]]),
            m(vec![vec![0], vec![0]]),
            m(vec![vec![0, 0]]),
        )
        .unwrap();
        let red = cfg.canonical_reduction().unwrap();
        assert!(red.reduced.is_none());
        assert!(same_points(&red.points, &[DUPoint::plane([qg(1), qg(2)]), DUPoint::plane([qg(1), qg(2)])]));
    }

    #[test]
    fn blowup_point_from_diagonal_block() {
        let cfg = Config1::charge_one(g(2), g(3), g(5), vec![g(0)], vec![g(0)]).unwrap();
        let red = cfg.canonical_reduction().unwrap();
        let p = &red.points[0];
        assert_eq!(p.lambda, [qg(10), qg(15)]);
        assert!(p.on_incidence_variety());
        let mu = p.mu.clone().unwrap();
        assert!((mu[0].clone() * qg(2) + mu[1].clone() * qg(3)).is_zero());
    }

    #[test]
    fn not_integrable_rejected() {
        let cfg = Config0::charge_one(g(0), g(0), vec![g(1)], vec![g(1)]).unwrap();
        assert!(matches!(cfg.canonical_reduction(), Err(Error::NotIntegrable)));
    }
}
