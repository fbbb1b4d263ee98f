//! Pullback, direct image, translation and the gluing maps `⊞₀`, `⊞_L`
//! with their inverses.

use crate::error::{Error, Result};
use crate::exact::{eig2, Field, Matrix, NormedField};
use crate::monad::{Config0, Config1};

use super::centers::NeighborhoodSpec;

/// `π_x*(a₁,a₂,b,c) = (a₁ − x₁, a₂ − x₂, 1, b, c)`.
pub fn pullback_blowup<F: Field>(m: &Config0<F>, x: &[F; 2]) -> Config1<F> {
    let t = m.translate(x);
    Config1 { a1: t.a1, a2: t.a2, d: Matrix::identity(m.k()), b: t.b, c: t.c }
}

/// `π_#(a₁,a₂,d,b,c) = (da₁, da₂, db, c)`.
pub fn direct_image<F: Field>(m: &Config1<F>) -> Config0<F> {
    Config0 { a1: m.d.mul(&m.a1), a2: m.d.mul(&m.a2), b: m.d.mul(&m.b), c: m.c.clone() }
}

/// `τ(a₁,a₂,b,c) = (a₁ − x₁, a₂ − x₂, b, c)`.
pub fn translate_tau<F: Field>(m: &Config0<F>, x: &[F; 2]) -> Config0<F> {
    m.translate(x)
}

fn check_k1(k: usize, what: &str) -> Result<()> {
    if k != 1 {
        return Err(Error::ShapeMismatch(format!("{what} needs a charge-one factor, got k={k}")));
    }
    Ok(())
}

fn check_rank(r1: usize, r2: usize) -> Result<()> {
    if r1 != r2 {
        return Err(Error::ShapeMismatch(format!("framing ranks {r1} and {r2} differ")));
    }
    Ok(())
}

fn scalar<F: Field>(m: &Matrix<F>) -> F {
    m[(0, 0)].clone()
}

/// `b_x·c_y` for a row `b_x` and a column `c_y`.
fn pairing<F: Field>(b: &Matrix<F>, c: &Matrix<F>) -> F {
    scalar(&b.mul(c))
}

fn block2<F: Field>(e: [[F; 2]; 2]) -> Matrix<F> {
    Matrix::from_fn(2, 2, |i, j| e[i][j].clone())
}

/// `⊞₀`: two plane charge-one configurations near distinct points glued into
/// a charge-two configuration.
pub fn boxplus0<F: Field>(ml: &Config0<F>, mr: &Config0<F>) -> Result<Config0<F>> {
    check_k1(ml.k(), "boxplus0")?;
    check_k1(mr.k(), "boxplus0")?;
    check_rank(ml.r(), mr.r())?;
    let (a1l, a1r) = (scalar(&ml.a1), scalar(&mr.a1));
    let den = a1r.clone() - a1l.clone();
    if den.is_zero() {
        return Err(Error::EigenvalueCollision(format!("a1L = a1R = {a1l}")));
    }
    let up = pairing(&ml.b, &mr.c) / den.clone();
    let low = pairing(&mr.b, &ml.c) / (-den);
    Ok(Config0 {
        a1: Matrix::diag(vec![a1l, a1r]),
        a2: block2([[scalar(&ml.a2), up], [low, scalar(&mr.a2)]]),
        b: Matrix::vstack(&[&ml.b, &mr.b])?,
        c: Matrix::hstack(&[&ml.c, &mr.c])?,
    })
}

/// `⊞_L`: a blow-up charge-one configuration near the exceptional line and a
/// plane one near `z` glued into a blow-up charge-two configuration.
pub fn boxplus_l<F: Field>(m1: &Config1<F>, m2: &Config0<F>) -> Result<Config1<F>> {
    check_k1(m1.k(), "boxplusL")?;
    check_k1(m2.k(), "boxplusL")?;
    check_rank(m1.r(), m2.r())?;
    let [a1p, a2p, dp] = m1.scalars().expect("k=1");
    let a1pp = scalar(&m2.a1);
    let den = a1pp.clone() - dp.clone() * a1p.clone();
    if den.is_zero() {
        return Err(Error::EigenvalueCollision(format!("a1'' = d'a1' = {a1pp}")));
    }
    let up = pairing(&m1.b, &m2.c) / den.clone();
    let low = pairing(&m2.b, &m1.c) / (-den);
    Ok(Config1 {
        a1: Matrix::diag(vec![a1p, a1pp]),
        a2: block2([[a2p, up], [low, scalar(&m2.a2)]]),
        d: Matrix::diag(vec![dp, F::one()]),
        b: Matrix::vstack(&[&m1.b, &m2.b])?,
        c: Matrix::hstack(&[&m1.c, &m2.c])?,
    })
}

fn row<F: Field>(m: &Matrix<F>, i: usize) -> Matrix<F> {
    m.block(i, 0, 1, m.cols())
}

fn col<F: Field>(m: &Matrix<F>, j: usize) -> Matrix<F> {
    m.block(0, j, m.rows(), 1)
}

/// Base-field eigenvalues of a 2×2 matrix with one root in each neighbourhood,
/// returned in neighbourhood order.
fn split_roots<F: NormedField>(m: &Matrix<F>, first: &NeighborhoodSpec<F>, second: &NeighborhoodSpec<F>) -> Result<[F; 2]> {
    let e = eig2(m)?;
    if !e.distinct {
        return Err(Error::NotInNL(format!("coincident eigenvalues {}", e.values[0])));
    }
    let [l0, l1] = e.base_values().ok_or(Error::NotSplitOverQi)?;
    if first.contains(&l0) && second.contains(&l1) {
        Ok([l0, l1])
    } else if first.contains(&l1) && second.contains(&l0) {
        Ok([l1, l0])
    } else {
        Err(Error::NotInNL(format!("eigenvalues {l0}, {l1} miss the neighbourhoods")))
    }
}

fn eigvec<F: Field>(m: &Matrix<F>, l: &F) -> Vec<F> {
    let shifted = m.sub(&Matrix::scalar(2, l.clone()));
    shifted.kernel().into_iter().next().expect("eigenvalue has an eigenvector")
}

fn columns<F: Field>(u: &[F], v: &[F]) -> Matrix<F> {
    Matrix::from_fn(2, 2, |i, j| if j == 0 { u[i].clone() } else { v[i].clone() })
}

/// Inverse of `⊞₀` on `N₀`: the factors near the first and second center,
/// each in its scalar-normalized orbit representative.
pub fn boxplus0_inverse<F: NormedField>(
    m: &Config0<F>,
    near_l: &NeighborhoodSpec<F>,
    near_r: &NeighborhoodSpec<F>,
) -> Result<(Config0<F>, Config0<F>)> {
    if m.k() != 2 {
        return Err(Error::ShapeMismatch(format!("boxplus0 inverse needs k=2, got {}", m.k())));
    }
    let [ll, lr] = split_roots(&m.a1, near_l, near_r)?;
    let g = columns(&eigvec(&m.a1, &ll), &eigvec(&m.a1, &lr));
    let t = m.act(&g)?;
    let factor = |i: usize| Config0 {
        a1: t.a1.block(i, i, 1, 1),
        a2: t.a2.block(i, i, 1, 1),
        b: row(&t.b, i),
        c: col(&t.c, i),
    };
    let (fl, fr) = (factor(0), factor(1));
    if boxplus0(&fl, &fr)? != t {
        return Err(Error::NotIntegrable);
    }
    Ok((fl.normalize_k1(), fr.normalize_k1()))
}

/// Basis change bringing `m` to the block form of `⊞_L`: eigenvectors
/// `v₀, v₁` of `a₁d`, `w₀` of `da₁` and `w₁ = dv₁`.
pub(crate) fn blowup_block_form<F: Field>(m: &Config1<F>, l0: &F, l1: &F) -> Result<Config1<F>> {
    let a1d = m.a1.mul(&m.d);
    let da1 = m.d.mul(&m.a1);
    let v0 = eigvec(&a1d, l0);
    let v1 = eigvec(&a1d, l1);
    let w0 = eigvec(&da1, l0);
    let w1 = m.d.mul_vec(&v1);
    m.act(&columns(&v0, &v1), &columns(&w0, &w1))
}

fn blowup_factors<F: Field>(t: &Config1<F>) -> (Config1<F>, Config0<F>) {
    let m1 = Config1 {
        a1: t.a1.block(0, 0, 1, 1),
        a2: t.a2.block(0, 0, 1, 1),
        d: t.d.block(0, 0, 1, 1),
        b: row(&t.b, 0),
        c: col(&t.c, 0),
    };
    let m2 = Config0 { a1: t.a1.block(1, 1, 1, 1), a2: t.a2.block(1, 1, 1, 1), b: row(&t.b, 1), c: col(&t.c, 1) };
    (m1, m2)
}

/// Inverse of `⊞_L` on `N_L`: eigenvalues of `a₁d` must be distinct, rational
/// over the scalars and lie one near `0` and one near `z₁`.
pub fn boxplus_l_inverse<F: NormedField>(
    m: &Config1<F>,
    near0: &NeighborhoodSpec<F>,
    near_z: &NeighborhoodSpec<F>,
) -> Result<(Config1<F>, Config0<F>)> {
    if m.k() != 2 {
        return Err(Error::ShapeMismatch(format!("boxplusL inverse needs k=2, got {}", m.k())));
    }
    let [l0, l1] = split_roots(&m.a1.mul(&m.d), near0, near_z)?;
    let t = blowup_block_form(m, &l0, &l1)?;
    let (m1, m2) = blowup_factors(&t);
    if boxplus_l(&m1, &m2)? != t {
        return Err(Error::NotIntegrable);
    }
    Ok((m1.normalize_k1(), m2.normalize_k1()))
}

pub(crate) fn factors_of<F: Field>(t: &Config1<F>) -> (Config1<F>, Config0<F>) {
    blowup_factors(t)
}

/// Representative of the S-equivalence class of a charge-one plane
/// configuration: its normalized orbit if non-degenerate, else the ideal
/// point `(a₁, a₂, 0, 0)`.
pub fn s_class_k1<F: Field>(m: &Config0<F>) -> Config0<F> {
    if m.b.is_zero() || m.c.is_zero() {
        let r = m.r();
        Config0 { a1: m.a1.clone(), a2: m.a2.clone(), b: Matrix::zeros(1, r), c: Matrix::zeros(r, 1) }
    } else {
        m.normalize_k1()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, GaussianRational as G};

    fn g(v: i64) -> G {
        G::from(v)
    }

    fn m(rows: Vec<Vec<i64>>) -> Matrix<G> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(G::from).collect()).collect()).unwrap()
    }

    fn plane(a1: i64, a2: i64, b: [i64; 2], c: [i64; 2]) -> Config0<G> {
        Config0::charge_one(g(a1), g(a2), b.iter().map(|&x| g(x)).collect(), c.iter().map(|&x| g(x)).collect()).unwrap()
    }

    fn blow(a1: i64, a2: i64, d: i64, b: [i64; 2], c: [i64; 2]) -> Config1<G> {
        Config1::charge_one(g(a1), g(a2), g(d), b.iter().map(|&x| g(x)).collect(), c.iter().map(|&x| g(x)).collect())
            .unwrap()
    }

    #[test]
    fn boxplus0_example() {
        let out = boxplus0(&plane(0, 0, [1, 0], [0, 1]), &plane(1, 0, [0, 1], [1, 0])).unwrap();
        assert_eq!(out.a2, m(vec![vec![0, 1], vec![-1, 0]]));
        assert!(out.is_integrable());
    }

    #[test]
    fn boxplus0_collision() {
        let r = boxplus0(&plane(1, 0, [1, 0], [0, 1]), &plane(1, 0, [0, 1], [1, 0]));
        assert!(matches!(r, Err(Error::EigenvalueCollision(_))));
    }

    #[test]
    fn boxplus_l_example() {
        let out = boxplus_l(&blow(2, 3, 0, [1, 0], [0, 1]), &plane(1, 0, [0, 1], [1, 0])).unwrap();
        assert_eq!(out.a1, m(vec![vec![2, 0], vec![0, 1]]));
        assert_eq!(out.a2, m(vec![vec![3, 1], vec![-1, 0]]));
        assert_eq!(out.d, m(vec![vec![0, 0], vec![0, 1]]));
        assert!(out.is_integrable());
    }

    #[test]
    fn boxplus_l_round_trip() {
        let m1 = blow(2, 3, 0, [1, 0], [0, 1]);
        let m2 = plane(1, 0, [0, 1], [1, 0]);
        let out = boxplus_l(&m1, &m2).unwrap();
        let near0 = NeighborhoodSpec::origin(rat(1, 4)).unwrap();
        let near_z = NeighborhoodSpec::new(rat(1, 4), g(1)).unwrap();
        let (f1, f2) = boxplus_l_inverse(&out, &near0, &near_z).unwrap();
        assert_eq!(f1, m1.normalize_k1());
        assert_eq!(f2, m2.normalize_k1());
        // same configuration moved by the group lands on the same factors
        let moved = out.act(&m(vec![vec![1, 2], vec![0, 1]]), &m(vec![vec![3, 0], vec![1, 1]])).unwrap();
        let (h1, h2) = boxplus_l_inverse(&moved, &near0, &near_z).unwrap();
        assert_eq!((h1, h2), (f1, f2));
    }

    #[test]
    fn boxplus_l_inverse_rejects_collision() {
        let cfg = Config1::new(Matrix::identity(2), Matrix::identity(2), Matrix::identity(2), m(vec![vec![1], vec![0]]), m(vec![vec![0, 0]]))
            .unwrap();
        let near0 = NeighborhoodSpec::origin(rat(1, 4)).unwrap();
        let near_z = NeighborhoodSpec::new(rat(1, 4), g(1)).unwrap();
        assert!(matches!(boxplus_l_inverse(&cfg, &near0, &near_z), Err(Error::NotInNL(_))));
    }

    #[test]
    fn direct_image_of_pullback_is_translation() {
        let y = boxplus0(&plane(0, 1, [1, 2], [0, 0]), &plane(3, 5, [0, 1], [2, 0])).unwrap();
        let x = [g(2), g(-1)];
        assert_eq!(direct_image(&pullback_blowup(&y, &x)), translate_tau(&y, &x));
        let p = pullback_blowup(&plane(5, 7, [1, 0], [0, 1]), &[g(5), g(7)]);
        assert_eq!(p.scalars().unwrap(), [g(0), g(0), g(1)]);
    }

    #[test]
    fn boxplus0_round_trip() {
        let ml = plane(0, 2, [1, 3], [3, -1]);
        let mr = plane(4, 1, [0, 1], [1, 0]);
        let y = boxplus0(&ml, &mr).unwrap();
        let nl = NeighborhoodSpec::new(rat(1, 2), g(0)).unwrap();
        let nr = NeighborhoodSpec::new(rat(1, 2), g(4)).unwrap();
        let (fl, fr) = boxplus0_inverse(&y, &nl, &nr).unwrap();
        assert_eq!((fl, fr), (ml.normalize_k1(), mr.normalize_k1()));
    }
}
