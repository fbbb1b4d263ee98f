//! Plane (`Config0`) and one-point blow-up (`Config1`) ADHM configurations.


use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, QuadExt};

/// `(a₁, a₂, b, c)` with `aᵢ ∈ End(W)`, `b: Cʳ → W`, `c: W → Cʳ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Config0<F> {
    pub a1: Matrix<F>,
    pub a2: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
}

/// `(a₁, a₂, d, b, c)` with `aᵢ: W → V`, `d: V → W`, `b: Cʳ → V`, `c: W → Cʳ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Config1<F> {
    pub a1: Matrix<F>,
    pub a2: Matrix<F>,
    pub d: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
}

fn expect_shape<F: Field>(m: &Matrix<F>, shape: (usize, usize), name: &str) -> Result<()> {
    if (m.rows(), m.cols()) != shape {
        return Err(Error::ShapeMismatch(format!(
            "{name} is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            shape.0,
            shape.1
        )));
    }
    Ok(())
}

impl<F: Field> Config0<F> {
    pub fn new(a1: Matrix<F>, a2: Matrix<F>, b: Matrix<F>, c: Matrix<F>) -> Result<Self> {
        let (k, r) = (a1.rows(), b.cols());
        expect_shape(&a1, (k, k), "a1")?;
        expect_shape(&a2, (k, k), "a2")?;
        expect_shape(&b, (k, r), "b")?;
        expect_shape(&c, (r, k), "c")?;
        Ok(Self { a1, a2, b, c })
    }

    /// Charge-one configuration from scalars and framing vectors.
    pub fn charge_one(a1: F, a2: F, b: Vec<F>, c: Vec<F>) -> Result<Self> {
        Self::new(Matrix::scalar(1, a1), Matrix::scalar(1, a2), Matrix::row(b), Matrix::column(c))
    }

    pub fn k(&self) -> usize {
        self.a1.rows()
    }

    pub fn r(&self) -> usize {
        self.b.cols()
    }

    /// `[a₁, a₂] + b·c`.
    pub fn integrability_residual(&self) -> Matrix<F> {
        let comm = self.a1.mul(&self.a2).sub(&self.a2.mul(&self.a1));
        comm.add(&self.b.mul(&self.c))
    }

    pub fn is_integrable(&self) -> bool {
        self.integrability_residual().is_zero()
    }

    /// `g·(a₁,a₂,b,c) = (g⁻¹a₁g, g⁻¹a₂g, g⁻¹b, cg)`.
    pub fn act(&self, g: &Matrix<F>) -> Result<Self> {
        if g.shape() != (self.k(), self.k()) {
            return Err(Error::ShapeMismatch(format!("group element {:?} for k={}", g.shape(), self.k())));
        }
        let gi = g.inverse().ok_or(Error::SingularGroupElement)?;
        Ok(Self {
            a1: gi.mul(&self.a1).mul(g),
            a2: gi.mul(&self.a2).mul(g),
            b: gi.mul(&self.b),
            c: self.c.mul(g),
        })
    }

    /// τ: shift both `aᵢ` by `−xᵢ`.
    pub fn translate(&self, x: &[F; 2]) -> Self {
        let k = self.k();
        Self {
            a1: self.a1.sub(&Matrix::scalar(k, x[0].clone())),
            a2: self.a2.sub(&Matrix::scalar(k, x[1].clone())),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> Config0<G> {
        Config0 { a1: self.a1.map(f), a2: self.a2.map(f), b: self.b.map(f), c: self.c.map(f) }
    }

    pub fn lift(&self) -> Config0<QuadExt<F>> {
        self.map(|x| QuadExt::base(x.clone()))
    }

    /// Scalar entries of a charge-one configuration: `(a₁, a₂)`.
    pub fn scalars(&self) -> Option<[F; 2]> {
        (self.k() == 1).then(|| [self.a1[(0, 0)].clone(), self.a2[(0, 0)].clone()])
    }
}

impl<F: Field> Config1<F> {
    pub fn new(a1: Matrix<F>, a2: Matrix<F>, d: Matrix<F>, b: Matrix<F>, c: Matrix<F>) -> Result<Self> {
        let (k, r) = (a1.rows(), b.cols());
        expect_shape(&a1, (k, k), "a1")?;
        expect_shape(&a2, (k, k), "a2")?;
        expect_shape(&d, (k, k), "d")?;
        expect_shape(&b, (k, r), "b")?;
        expect_shape(&c, (r, k), "c")?;
        Ok(Self { a1, a2, d, b, c })
    }

    pub fn charge_one(a1: F, a2: F, d: F, b: Vec<F>, c: Vec<F>) -> Result<Self> {
        Self::new(
            Matrix::scalar(1, a1),
            Matrix::scalar(1, a2),
            Matrix::scalar(1, d),
            Matrix::row(b),
            Matrix::column(c),
        )
    }

    pub fn k(&self) -> usize {
        self.a1.rows()
    }

    pub fn r(&self) -> usize {
        self.b.cols()
    }

    /// `a₁·d·a₂ − a₂·d·a₁ + b·c`.
    pub fn integrability_residual(&self) -> Matrix<F> {
        let x = self.a1.mul(&self.d).mul(&self.a2);
        let y = self.a2.mul(&self.d).mul(&self.a1);
        x.sub(&y).add(&self.b.mul(&self.c))
    }

    /// `a₁(W) + a₂(W) + b(Cʳ) = V`.
    pub fn is_effective(&self) -> bool {
        Matrix::hstack(&[&self.a1, &self.a2, &self.b]).map(|m| m.rank() == self.k()).unwrap_or(false)
    }

    pub fn is_integrable(&self) -> bool {
        self.integrability_residual().is_zero() && self.is_effective()
    }

    /// `(g₀,g₁)·(a₁,a₂,b,c,d) = (g₀⁻¹a₁g₁, g₀⁻¹a₂g₁, g₀⁻¹b, cg₁, g₁⁻¹dg₀)`.
    pub fn act(&self, g0: &Matrix<F>, g1: &Matrix<F>) -> Result<Self> {
        let k = self.k();
        if g0.shape() != (k, k) || g1.shape() != (k, k) {
            return Err(Error::ShapeMismatch(format!("group elements {:?}, {:?} for k={k}", g0.shape(), g1.shape())));
        }
        let g0i = g0.inverse().ok_or(Error::SingularGroupElement)?;
        let g1i = g1.inverse().ok_or(Error::SingularGroupElement)?;
        Ok(Self {
            a1: g0i.mul(&self.a1).mul(g1),
            a2: g0i.mul(&self.a2).mul(g1),
            d: g1i.mul(&self.d).mul(g0),
            b: g0i.mul(&self.b),
            c: self.c.mul(g1),
        })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> Config1<G> {
        Config1 {
            a1: self.a1.map(f),
            a2: self.a2.map(f),
            d: self.d.map(f),
            b: self.b.map(f),
            c: self.c.map(f),
        }
    }

    pub fn lift(&self) -> Config1<QuadExt<F>> {
        self.map(|x| QuadExt::base(x.clone()))
    }

    /// `(a₁, a₂, d)` of a charge-one configuration.
    pub fn scalars(&self) -> Option<[F; 3]> {
        (self.k() == 1).then(|| [self.a1[(0, 0)].clone(), self.a2[(0, 0)].clone(), self.d[(0, 0)].clone()])
    }
}

/// Either kind of configuration, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyConfig<F> {
    Plane(Config0<F>),
    Blowup(Config1<F>),
}

impl<F: Field> AnyConfig<F> {
    pub fn k(&self) -> usize {
        match self {
            Self::Plane(m) => m.k(),
            Self::Blowup(m) => m.k(),
        }
    }

    pub fn r(&self) -> usize {
        match self {
            Self::Plane(m) => m.r(),
            Self::Blowup(m) => m.r(),
        }
    }

    pub fn is_integrable(&self) -> bool {
        match self {
            Self::Plane(m) => m.is_integrable(),
            Self::Blowup(m) => m.is_integrable(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational as G;
    use num_traits::One;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<G> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(G::from).collect()).collect()).unwrap()
    }

    fn g(v: i64) -> G {
        G::from(v)
    }

    #[test]
    fn charge_one_integrability() {
        let ok = Config0::charge_one(g(0), g(0), vec![g(1), g(0)], vec![g(0), g(1)]).unwrap();
        assert!(ok.is_integrable());
        let bad = Config0::charge_one(g(0), g(0), vec![g(1), g(1)], vec![g(1), g(1)]).unwrap();
        assert!(!bad.is_integrable());
        assert_eq!(bad.integrability_residual(), m(vec![vec![2]]));
    }

    #[test]
    fn blowup_integrability() {
        let cfg = Config1::new(
            m(vec![vec![2, 0], vec![0, 1]]),
            m(vec![vec![3, 1], vec![-1, 0]]),
            m(vec![vec![0, 0], vec![0, 1]]),
            m(vec![vec![1, 0], vec![0, 1]]),
            m(vec![vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        assert!(cfg.integrability_residual().is_zero());
        assert!(cfg.is_effective());
        assert!(cfg.is_integrable());
    }

    #[test]
    fn shape_errors() {
        let e = Config0::new(m(vec![vec![1]]), m(vec![vec![1, 0]]), m(vec![vec![1]]), m(vec![vec![1]]));
        assert!(matches!(e, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn conjugation_action() {
        let cfg = Config0::new(
            m(vec![vec![0, 1], vec![0, 0]]),
            m(vec![vec![0, 0], vec![0, 0]]),
            m(vec![vec![0], vec![0]]),
            m(vec![vec![0, 0]]),
        )
        .unwrap();
        let out = cfg.act(&m(vec![vec![1, 0], vec![0, 2]])).unwrap();
        assert_eq!(out.a1, m(vec![vec![0, 2], vec![0, 0]]));
        assert_eq!(cfg.act(&Matrix::identity(2)).unwrap(), cfg);
        assert!(matches!(cfg.act(&m(vec![vec![1, 1], vec![1, 1]])), Err(Error::SingularGroupElement)));
    }

    #[test]
    fn scalar_action_keeps_bc() {
        let cfg = Config0::charge_one(g(3), g(4), vec![g(1), g(2)], vec![g(5), g(-1)]).unwrap();
        let out = cfg.act(&m(vec![vec![7]])).unwrap();
        assert_eq!(out.a1, cfg.a1);
        assert_eq!(out.b, cfg.b.scale(&(G::one() / g(7))));
        assert_eq!(out.c, cfg.c.scale(&g(7)));
        assert_eq!(out.b.mul(&out.c), cfg.b.mul(&cfg.c));
    }
}
