use blowup_core::exact::{smith_normal_form, Field, Matrix};
use blowup_core::graded::{GradedModuleSpec, GradedRing};
use blowup_core::monad::{Config0, Config1};
use blowup_core::spectral::{build_cover_charge1, build_cover_charge2_q2};
use blowup_core::{GaussianRational as G, IntMatrix, MatrixC};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = G> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(p, q, s)| G::from_ratio(p, q) + G::from_ratio(s, 2) * G::i())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatrixC> {
    prop::collection::vec(scalar(), rows * cols).prop_map(move |d| Matrix::from_vec(rows, cols, d).unwrap())
}

fn invertible(k: usize) -> impl Strategy<Value = MatrixC> {
    matrix(k, k).prop_filter("singular", |g| g.inverse().is_some())
}

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c)
            .prop_map(move |d| Matrix::from_vec(r, c, d.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn plane(k: usize, r: usize) -> impl Strategy<Value = Config0<G>> {
    (matrix(k, k), matrix(k, k), matrix(k, r), matrix(r, k)).prop_map(|(a1, a2, b, c)| Config0::new(a1, a2, b, c).unwrap())
}

fn blowup(k: usize, r: usize) -> impl Strategy<Value = Config1<G>> {
    (matrix(k, k), matrix(k, k), matrix(k, k), matrix(k, r), matrix(r, k))
        .prop_map(|(a1, a2, d, b, c)| Config1::new(a1, a2, d, b, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_diagonal_and_divisible(m in int_matrix()) {
        let snf = smith_normal_form(&m);
        let (u, v) = (snf.u.clone().unwrap(), snf.v.clone().unwrap());
        let d = u.mul(&m).mul(&v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < snf.rank { snf.invariants[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), &want);
            }
        }
        for w in snf.invariants.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        // unimodular transforms
        let det = |x: &IntMatrix| blowup_core::exact::snf::determinant(x);
        prop_assert!(det(&u).abs().is_one() && det(&v).abs().is_one());
    }

    #[test]
    fn gaussian_field_laws(a in scalar(), b in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) - b.clone(), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.clone() * b.clone() / b.clone(), a.clone());
            prop_assert_eq!(b.clone() * b.inv().unwrap(), G::one());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<G>().unwrap(), a);
    }

    #[test]
    fn plane_residual_is_the_x3_squared_coefficient(m in plane(2, 2)) {
        let res = m.monad_residual();
        prop_assert_eq!(res.coefficient(&[0, 0, 2, 0, 0]), m.integrability_residual());
        prop_assert!(res.terms().keys().all(|k| *k == [0, 0, 2, 0, 0]));
    }

    #[test]
    fn plane_residual_is_equivariant(m in plane(2, 2), g in invertible(2)) {
        let moved = m.act(&g).unwrap();
        let gi = g.inverse().unwrap();
        prop_assert_eq!(moved.integrability_residual(), gi.mul(&m.integrability_residual()).mul(&g));
        prop_assert_eq!(moved.act(&gi).unwrap(), m);
    }

    #[test]
    fn blowup_residual_is_equivariant(m in blowup(2, 2), g0 in invertible(2), g1 in invertible(2)) {
        let moved = m.act(&g0, &g1).unwrap();
        let g0i = g0.inverse().unwrap();
        prop_assert_eq!(moved.integrability_residual(), g0i.mul(&m.integrability_residual()).mul(&g1));
        prop_assert_eq!(moved.is_integrable(), m.is_integrable());
    }

    #[test]
    fn ideal_hilbert_matches_enumeration(gens in prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..4), n in 0u32..14) {
        let ring = GradedRing::new(&[("x", 2), ("y", 2), ("z", 4)]).unwrap();
        let count = ring
            .monomial_basis(n)
            .iter()
            .filter(|m| gens.iter().any(|g| g.iter().zip(m.iter()).all(|(a, b)| a <= b)))
            .count() as u64;
        let spec = GradedModuleSpec::MonomialIdeal { ring, generators: gens };
        prop_assert_eq!(spec.hilbert(n), count);
    }

    #[test]
    fn map_matrices_respect_composition(n in 0u32..12) {
        let mut covers = vec![build_cover_charge2_q2().unwrap()];
        covers.extend((1..4).map(|q| build_cover_charge1(q).unwrap()));
        for cover in &covers {
            for inner in &cover.arrows {
                for outer in cover.arrows.iter().filter(|a| a.from == inner.to) {
                    let composite = outer.map.compose(&inner.map).unwrap();
                    prop_assert_eq!(composite.map_matrix(n), outer.map.map_matrix(n).mul(&inner.map.map_matrix(n)));
                }
            }
        }
    }
}
