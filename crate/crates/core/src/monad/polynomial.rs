//! Matrix-valued polynomials in the sections `x₁, x₂, x₃, y₁, y₂` and the
//! symbolic monad maps `A`, `B`.

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{Field, Matrix};

use super::config::{Config0, Config1};

/// Exponents of `(x₁, x₂, x₃, y₁, y₂)`.
pub type Monomial = [u8; 5];

pub const X1: Monomial = [1, 0, 0, 0, 0];
pub const X2: Monomial = [0, 1, 0, 0, 0];
pub const X3: Monomial = [0, 0, 1, 0, 0];
pub const Y1: Monomial = [0, 0, 0, 1, 0];
pub const Y2: Monomial = [0, 0, 0, 0, 1];

const NAMES: [&str; 5] = ["x1", "x2", "x3", "y1", "y2"];

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    std::array::from_fn(|i| a[i] + b[i])
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonadPolynomial<F> {
    rows: usize,
    cols: usize,
    terms: BTreeMap<Monomial, Matrix<F>>,
    /// Reduce modulo `x₁y₁ + x₂y₂`.
    relation: bool,
}

impl<F: Field> MonadPolynomial<F> {
    pub fn zero(rows: usize, cols: usize, relation: bool) -> Self {
        Self { rows, cols, terms: BTreeMap::new(), relation }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Matrix<F>> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Matrix<F> {
        self.terms.get(m).cloned().unwrap_or_else(|| Matrix::zeros(self.rows, self.cols))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coef · mono`, dropping vanishing coefficients.
    pub fn add_term(&mut self, mono: Monomial, coef: Matrix<F>) {
        assert_eq!(coef.shape(), (self.rows, self.cols));
        let sum = match self.terms.remove(&mono) {
            Some(old) => old.add(&coef),
            None => coef,
        };
        if !sum.is_zero() {
            self.terms.insert(mono, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out.relation |= o.relation;
        out.normalize()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "polynomial matrix shapes");
        let mut out = Self::zero(self.rows, o.cols, self.relation || o.relation);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca.mul(cb));
            }
        }
        out.normalize()
    }

    /// Rewrites `x₁y₁ → −x₂y₂` until no term is divisible by `x₁y₁`.
    pub fn normalize(mut self) -> Self {
        if !self.relation {
            return self;
        }
        loop {
            let Some(m) = self.terms.keys().find(|m| m[0] > 0 && m[3] > 0).copied() else {
                return self;
            };
            let c = self.terms.remove(&m).expect("present");
            let to = [m[0] - 1, m[1] + 1, m[2], m[3] - 1, m[4] + 1];
            self.add_term(to, c.neg());
        }
    }
}

impl<F: Field> fmt::Display for MonadPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let rows: Vec<String> = c
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            write!(f, "[{}]", rows.join(";"))?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", NAMES[i])?,
                    e => write!(f, "*{}^{e}", NAMES[i])?,
                }
            }
        }
        Ok(())
    }
}

/// Polynomial block matrix assembled from `(block row, block col, monomial, coefficient)`.
struct BlockBuilder<F> {
    row_off: Vec<usize>,
    col_off: Vec<usize>,
    out: MonadPolynomial<F>,
}

impl<F: Field> BlockBuilder<F> {
    fn new(row_sizes: &[usize], col_sizes: &[usize], relation: bool) -> Self {
        let offsets = |s: &[usize]| {
            s.iter()
                .scan(0, |acc, &x| {
                    let o = *acc;
                    *acc += x;
                    Some(o)
                })
                .collect::<Vec<_>>()
        };
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        Self {
            row_off: offsets(row_sizes),
            col_off: offsets(col_sizes),
            out: MonadPolynomial::zero(rows, cols, relation),
        }
    }

    fn put(&mut self, bi: usize, bj: usize, mono: Monomial, block: &Matrix<F>) {
        let mut full = Matrix::zeros(self.out.rows, self.out.cols);
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                full[(self.row_off[bi] + i, self.col_off[bj] + j)] = block[(i, j)].clone();
            }
        }
        self.out.add_term(mono, full);
    }

    fn finish(self) -> MonadPolynomial<F> {
        self.out.normalize()
    }
}

impl<F: Field> Config0<F> {
    /// `A = [x₁ − a₁x₃; x₂ − a₂x₃; c·x₃]`.
    pub fn monad_a(&self) -> MonadPolynomial<F> {
        let (k, r) = (self.k(), self.r());
        let id = Matrix::identity(k);
        let mut bb = BlockBuilder::new(&[k, k, r], &[k], false);
        bb.put(0, 0, X1, &id);
        bb.put(0, 0, X3, &self.a1.neg());
        bb.put(1, 0, X2, &id);
        bb.put(1, 0, X3, &self.a2.neg());
        bb.put(2, 0, X3, &self.c);
        bb.finish()
    }

    /// `B = [−x₂ + a₂x₃, x₁ − a₁x₃, b·x₃]`.
    pub fn monad_b(&self) -> MonadPolynomial<F> {
        let (k, r) = (self.k(), self.r());
        let id = Matrix::identity(k);
        let mut bb = BlockBuilder::new(&[k], &[k, k, r], false);
        bb.put(0, 0, X2, &id.neg());
        bb.put(0, 0, X3, &self.a2);
        bb.put(0, 1, X1, &id);
        bb.put(0, 1, X3, &self.a1.neg());
        bb.put(0, 2, X3, &self.b);
        bb.finish()
    }

    /// `B∘A`; equals `([a₁,a₂] + bc)·x₃²`.
    pub fn monad_residual(&self) -> MonadPolynomial<F> {
        self.monad_b().mul(&self.monad_a())
    }
}

impl<F: Field> Config1<F> {
    /// `A: W ⊕ V → V ⊕ W ⊕ V ⊕ W ⊕ Cʳ`.
    pub fn monad_a(&self) -> MonadPolynomial<F> {
        let (k, r) = (self.k(), self.r());
        let id = Matrix::identity(k);
        let da1 = self.d.mul(&self.a1);
        let da2 = self.d.mul(&self.a2);
        let mut bb = BlockBuilder::new(&[k, k, k, k, r], &[k, k], true);
        bb.put(0, 0, X3, &self.a1);
        bb.put(0, 1, Y2, &id.neg());
        bb.put(1, 0, X1, &id);
        bb.put(1, 0, X3, &da1.neg());
        bb.put(2, 0, X3, &self.a2);
        bb.put(2, 1, Y1, &id);
        bb.put(3, 0, X2, &id);
        bb.put(3, 0, X3, &da2.neg());
        bb.put(4, 0, X3, &self.c);
        bb.finish()
    }

    /// `B: V ⊕ W ⊕ V ⊕ W ⊕ Cʳ → V ⊕ W`.
    pub fn monad_b(&self) -> MonadPolynomial<F> {
        let (k, r) = (self.k(), self.r());
        let id = Matrix::identity(k);
        let mut bb = BlockBuilder::new(&[k, k], &[k, k, k, k, r], true);
        bb.put(0, 0, X2, &id);
        bb.put(0, 1, X3, &self.a2);
        bb.put(0, 2, X1, &id.neg());
        bb.put(0, 3, X3, &self.a1.neg());
        bb.put(0, 4, X3, &self.b);
        bb.put(1, 0, Y1, &self.d);
        bb.put(1, 1, Y1, &id);
        bb.put(1, 2, Y2, &self.d);
        bb.put(1, 3, Y2, &id);
        bb.finish()
    }

    /// `B∘A` reduced modulo `x₁y₁ + x₂y₂`.
    pub fn monad_residual(&self) -> MonadPolynomial<F> {
        self.monad_b().mul(&self.monad_a())
    }
}
