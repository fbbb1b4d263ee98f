//! Čech nerves of the moduli covers, with a coefficient ring on every face
//! and a signed restriction map on every incidence.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::graded::{GradedRing, RingMap, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub name: String,
    /// Sorted vertex indices; the face has dimension `vertices.len() − 1`.
    pub vertices: Vec<usize>,
    pub ring: GradedRing,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Restriction from `faces[from]` to the codimension-one coface `faces[to]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub map: RingMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDescription {
    pub name: String,
    pub faces: Vec<Face>,
    pub arrows: Vec<Arrow>,
}

impl CoverDescription {
    /// Checks incidences and ring compatibility of every arrow.
    pub fn new(name: impl Into<String>, faces: Vec<Face>, arrows: Vec<Arrow>) -> Result<Self> {
        for a in &arrows {
            let (Some(s), Some(t)) = (faces.get(a.from), faces.get(a.to)) else {
                return Err(Error::ShapeMismatch(format!("arrow {} -> {} out of range", a.from, a.to)));
            };
            let incident = t.dim() == s.dim() + 1 && s.vertices.iter().all(|v| t.vertices.contains(v));
            if !incident {
                return Err(Error::ShapeMismatch(format!("{} is not a facet of {}", s.name, t.name)));
            }
            if a.map.source != s.ring || a.map.target != t.ring {
                return Err(Error::ShapeMismatch(format!("map {} -> {} has the wrong rings", s.name, t.name)));
            }
        }
        Ok(Self { name: name.into(), faces, arrows })
    }

    pub fn max_dim(&self) -> usize {
        self.faces.iter().map(Face::dim).max().unwrap_or(0)
    }

    pub fn faces_of_dim(&self, p: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim() == p).collect()
    }

    /// `E₁^{p,n}` rank: sum of degree-`n` ranks over the `p`-faces.
    pub fn e1_rank(&self, p: usize, n: u32) -> usize {
        self.faces_of_dim(p).iter().map(|&i| self.faces[i].ring.hilbert(n) as usize).sum()
    }

    /// `d₁: E₁^{p,n} → E₁^{p+1,n}` assembled blockwise from the arrows.
    pub fn d1(&self, p: usize, n: u32) -> Matrix<BigInt> {
        let src = self.faces_of_dim(p);
        let tgt = self.faces_of_dim(p + 1);
        let offsets = |fs: &[usize]| {
            let mut acc = 0;
            fs.iter()
                .map(|&i| {
                    let o = acc;
                    acc += self.faces[i].ring.hilbert(n) as usize;
                    (i, o)
                })
                .collect::<Vec<_>>()
        };
        let (so, to) = (offsets(&src), offsets(&tgt));
        let mut d = Matrix::zeros(self.e1_rank(p + 1, n), self.e1_rank(p, n));
        for a in &self.arrows {
            let (Some(&(_, c0)), Some(&(_, r0))) =
                (so.iter().find(|(i, _)| *i == a.from), to.iter().find(|(i, _)| *i == a.to))
            else {
                continue;
            };
            let m = a.map.map_matrix(n);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    d[(r0 + i, c0 + j)] = m[(i, j)].clone();
                }
            }
        }
        d
    }

    /// `d₁∘d₁ = 0` in degree `n`.
    pub fn d1_squared_is_zero(&self, n: u32) -> bool {
        (0..self.max_dim().saturating_sub(1)).all(|p| self.d1(p + 1, n).mul(&self.d1(p, n)).is_zero())
    }

    /// `E₁^{p,n} = 0` for every `p` when `n` is odd.
    pub fn odd_rows_vanish(&self, n: u32) -> bool {
        n % 2 == 0 || (0..=self.max_dim()).all(|p| self.e1_rank(p, n) == 0)
    }
}

/// All non-empty subsets of `0..q` as sorted vectors, by size then lexicographically.
fn simplex_faces(q: usize) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> =
        (1u64..1 << q).map(|mask| (0..q).filter(|i| mask >> i & 1 == 1).collect()).collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    faces
}

/// Charge-one cover of `M₁(X_q)` by the pullbacks of the single blow-ups.
/// Vertex `i` carries `Z[uᵢ, vᵢ]`, every higher face `Z[w]`; restrictions send
/// `uᵢ ↦ w`, `vᵢ ↦ 0` and are the identity between higher faces. For `q = 0`
/// the cover is the single piece `Z[u]`.
pub fn build_cover_charge1(q: usize) -> Result<CoverDescription> {
    if q == 0 {
        let ring = GradedRing::new(&[("u", 2)])?;
        let face = Face { name: "M1(X0)".into(), vertices: vec![0], ring };
        return CoverDescription::new("charge 1, q = 0", vec![face], vec![]);
    }
    let w = GradedRing::new(&[("w", 2)])?;
    let subsets = simplex_faces(q);
    let faces: Vec<Face> = subsets
        .iter()
        .map(|s| {
            let label: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            let ring = if s.len() == 1 {
                let i = s[0] + 1;
                GradedRing::new(&[(&format!("u{i}"), 2), (&format!("v{i}"), 2)]).expect("valid generators")
            } else {
                w.clone()
            };
            Face { name: format!("U{}", label.join("")), vertices: s.clone(), ring }
        })
        .collect();
    let mut arrows = Vec::new();
    for (t, tf) in faces.iter().enumerate() {
        if tf.vertices.len() < 2 {
            continue;
        }
        for drop in 0..tf.vertices.len() {
            let mut sv = tf.vertices.clone();
            sv.remove(drop);
            let s = subsets.iter().position(|x| *x == sv).expect("face of the simplex");
            let sign = if drop % 2 == 0 { Sign::Plus } else { Sign::Minus };
            let images: &[&str] = if sv.len() == 1 { &["w", "0"] } else { &["w"] };
            let map = RingMap::parse(&faces[s].ring, &tf.ring, images, sign)?;
            arrows.push(Arrow { from: s, to: t, map });
        }
    }
    CoverDescription::new(format!("charge 1, q = {q}"), faces, arrows)
}

/// Rings and restriction maps of the charge-two cover `{A_L, A_R, N₂}` of
/// `M₂(X₂)`.
pub fn build_cover_charge2_q2() -> Result<CoverDescription> {
    let ring = |g: &[(&str, u32)]| GradedRing::new(g);
    let a_l = ring(&[("aΔ1L", 2), ("ab1L", 2), ("aΔ2L", 4), ("ab2L", 4)])?;
    let a_r = ring(&[("aΔ1R", 2), ("ab1R", 2), ("aΔ2R", 4), ("ab2R", 4)])?;
    let n2 = ring(&[("cΔL", 2), ("cbL", 2), ("cΔR", 2), ("cbR", 2)])?;
    let a0 = ring(&[("a1", 2), ("a2", 4)])?;
    let n_l = ring(&[("nΔL", 2), ("nbL", 2), ("n0R", 2)])?;
    let n_r = ring(&[("nΔR", 2), ("nbR", 2), ("n0L", 2)])?;
    let n0 = ring(&[("n0L", 2), ("n0R", 2)])?;
    let face = |name: &str, vertices: Vec<usize>, ring: &GradedRing| Face { name: name.into(), vertices, ring: ring.clone() };
    let faces = vec![
        face("A_L", vec![0], &a_l),
        face("A_R", vec![1], &a_r),
        face("N_2", vec![2], &n2),
        face("A_0", vec![0, 1], &a0),
        face("N_L", vec![0, 2], &n_l),
        face("N_R", vec![1, 2], &n_r),
        face("N_0", vec![0, 1, 2], &n0),
    ];
    use Sign::{Minus, Plus};
    let table: [(usize, usize, &[&str], Sign); 9] = [
        (0, 3, &["0", "a1", "0", "a2"], Plus),
        (0, 4, &["nΔL", "nbL + n0R", "nΔL*n0R", "nbL*n0R"], Minus),
        (1, 3, &["0", "a1", "0", "a2"], Minus),
        (1, 5, &["nΔR", "nbR + n0L", "nΔR*n0L", "nbR*n0L"], Plus),
        (2, 4, &["nΔL", "nbL", "0", "n0R"], Plus),
        (2, 5, &["0", "n0L", "nΔR", "nbR"], Minus),
        (3, 6, &["n0L + n0R", "n0L*n0R"], Plus),
        (4, 6, &["0", "n0L", "n0R"], Plus),
        (5, 6, &["0", "n0R", "n0L"], Plus),
    ];
    let arrows = table
        .iter()
        .map(|&(s, t, images, sign)| {
            Ok(Arrow { from: s, to: t, map: RingMap::parse(&faces[s].ring, &faces[t].ring, images, sign)? })
        })
        .collect::<Result<Vec<_>>>()?;
    CoverDescription::new("charge 2, q = 2", faces, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::kernel_rank_over_z;

    #[test]
    fn charge1_q2_degree2() {
        let c = build_cover_charge1(2).unwrap();
        let d = c.d1(0, 2);
        assert_eq!(d.shape(), (1, 4));
        assert_eq!(kernel_rank_over_z(&d).kernel_rank, 3);
    }

    #[test]
    fn charge1_guards() {
        for q in 0..=5 {
            let c = build_cover_charge1(q).unwrap();
            for n in 0..=12 {
                assert!(c.d1_squared_is_zero(n));
                assert!(c.odd_rows_vanish(n));
            }
        }
    }

    #[test]
    fn charge2_shape() {
        let c = build_cover_charge2_q2().unwrap();
        assert_eq!((c.e1_rank(0, 2), c.e1_rank(1, 2), c.e1_rank(2, 2)), (8, 7, 2));
        for n in 0..=12 {
            assert!(c.d1_squared_is_zero(n));
        }
    }

    #[test]
    fn wrong_rings_are_rejected() {
        let c = build_cover_charge2_q2().unwrap();
        let mut arrows = c.arrows.clone();
        arrows[0].to = 4;
        assert!(CoverDescription::new("bad", c.faces.clone(), arrows).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = build_cover_charge2_q2().unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CoverDescription>(&s).unwrap(), c);
    }
}
