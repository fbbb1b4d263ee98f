//! Canonical representatives of charge-one orbits, used to compare
//! configurations up to the group action.

use crate::exact::{Field, Matrix};

use super::config::{Config0, Config1};

fn first_nonzero<F: Field>(m: &Matrix<F>) -> Option<F> {
    (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).find(|x| !x.is_zero())
}

impl<F: Field> Config0<F> {
    /// Scales so the first non-zero entry of `b` (else of `c`) is 1.
    pub fn normalize_k1(&self) -> Self {
        assert_eq!(self.k(), 1, "scalar normalization needs charge one");
        let g = match (first_nonzero(&self.b), first_nonzero(&self.c)) {
            (Some(b0), _) => b0,
            (None, Some(c0)) => F::one() / c0,
            (None, None) => return self.clone(),
        };
        self.act(&Matrix::scalar(1, g)).expect("non-zero scalar")
    }
}

impl<F: Field> Config1<F> {
    /// Scales `(g₀, g₁)` so the first non-zero entries of `b` and `c` are 1;
    /// a missing framing is replaced by the first non-zero of `a₁, a₂, d`.
    pub fn normalize_k1(&self) -> Self {
        assert_eq!(self.k(), 1, "scalar normalization needs charge one");
        let b0 = first_nonzero(&self.b);
        let c0 = first_nonzero(&self.c);
        // a ↦ a·g₁/g₀, d ↦ d·g₀/g₁
        let ratio_source = [&self.a1, &self.a2].into_iter().find_map(|m| first_nonzero(m)).map(|a| (a, false));
        let ratio_source = ratio_source.or_else(|| first_nonzero(&self.d).map(|d| (d, true)));
        let one = F::one();
        let (g0, g1) = match (b0, c0) {
            (Some(b0), Some(c0)) => (b0, one / c0),
            (Some(b0), None) => match &ratio_source {
                // a·g₁/g₀ = 1 or d·g₀/g₁ = 1
                Some((a, false)) => (b0.clone(), b0 / a.clone()),
                Some((d, true)) => (b0.clone(), b0 * d.clone()),
                None => (b0, one),
            },
            (None, Some(c0)) => {
                let g1 = one / c0;
                match &ratio_source {
                    Some((a, false)) => (a.clone() * g1.clone(), g1),
                    Some((d, true)) => (g1.clone() / d.clone(), g1),
                    None => (F::one(), g1),
                }
            }
            (None, None) => match &ratio_source {
                Some((a, false)) => (a.clone(), F::one()),
                Some((d, true)) => (F::one(), d.clone()),
                None => (F::one(), F::one()),
            },
        };
        self.act(&Matrix::scalar(1, g0), &Matrix::scalar(1, g1)).expect("non-zero scalars")
    }
}
