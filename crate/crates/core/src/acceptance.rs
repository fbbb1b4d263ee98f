//! The acceptance suite: eight exact checks run by `blowup suite` and by the
//! `acceptance` test target.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, GaussianRational as G, Matrix};
use crate::gluing::{
    boxplus0, boxplus_l, boxplus_l_inverse, classify_c_image, direct_image, h2, lemma_condition2,
    lemma_condition3, pullback_blowup, translate_tau, BlowupCenters, Gluing, NeighborhoodSpec, X2Point,
};
use crate::graded::{kernel_hilbert, GradedModuleSpec, GradedRing, RingMap};
use crate::monad::{Config0, Config1};
use crate::spectral::{
    build_cover_charge1, build_cover_charge2_q2, closed_form_betti, compute_pages, decomposition_check_q2,
    k_a_spec, k_c_spec, simplex_assembly, BettiTable, CoverDescription,
};

pub const DEFAULT_SEED: u64 = 0x5eed_0b10;
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    /// Runs only criteria whose name or group contains this text.
    pub filter: Option<String>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, trials: DEFAULT_TRIALS, filter: None }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} {} ({:.2}s): {}", self.index, self.name, self.elapsed.as_secs_f64(), self.detail)
    }
}

type Check = fn(&SuiteOptions) -> Result<String, String>;

struct Criterion {
    name: &'static str,
    group: &'static str,
    run: Check,
}

const CRITERIA: [Criterion; 8] = [
    Criterion { name: "charge1-betti", group: "spectral", run: charge1_betti },
    Criterion { name: "baselines", group: "spectral", run: baselines },
    Criterion { name: "q2-triple-agreement", group: "spectral", run: q2_triple },
    Criterion { name: "kernel-identities", group: "spectral", run: kernel_identities },
    Criterion { name: "decomposition", group: "spectral", run: decomposition },
    Criterion { name: "general-q", group: "spectral", run: general_q },
    Criterion { name: "monad-gluing-properties", group: "monad gluing", run: properties },
    Criterion { name: "spectral-guards", group: "spectral", run: guards },
];

/// `(index, name, group)` of every criterion.
pub fn criteria() -> Vec<(usize, &'static str, &'static str)> {
    CRITERIA.iter().enumerate().map(|(i, c)| (i + 1, c.name, c.group)).collect()
}

/// Runs the selected criteria concurrently; results come back in index order.
pub fn run_suite(opts: &SuiteOptions) -> Vec<Outcome> {
    let selected: Vec<(usize, &Criterion)> = CRITERIA
        .iter()
        .enumerate()
        .filter(|(_, c)| opts.filter.as_deref().is_none_or(|f| c.name.contains(f) || c.group.contains(f)))
        .map(|(i, c)| (i + 1, c))
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&(index, c)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let result = (c.run)(opts);
                    let elapsed = start.elapsed();
                    let (passed, detail) = match result {
                        Ok(d) => (true, d),
                        Err(d) => (false, d),
                    };
                    Outcome { index, name: c.name, passed, detail, elapsed }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn first_difference(a: &BettiTable, b: &BettiTable) -> String {
    match a.rows.iter().zip(&b.rows).find(|(x, y)| x != y) {
        Some((x, y)) => format!("degree {}: {:?} vs {:?}", x.degree, (x.rank, &x.torsion), (y.rank, &y.torsion)),
        None => format!("lengths {} vs {}", a.rows.len(), b.rows.len()),
    }
}

fn charge1_betti(_: &SuiteOptions) -> Result<String, String> {
    for q in 0..=5usize {
        let cech = compute_pages(&build_cover_charge1(q).map_err(err)?, 20).map_err(err)?.betti;
        let closed = closed_form_betti(1, q, 20).map_err(err)?;
        ensure(cech == closed, || format!("q={q}: {}", first_difference(&cech, &closed)))?;
        for (d, b) in cech.ranks().into_iter().enumerate() {
            let rule = if d % 2 == 0 { 1 + q as u64 * d as u64 / 2 } else { 0 };
            ensure(b == rule, || format!("q={q} degree {d}: {b} != {rule}"))?;
        }
    }
    Ok("b_2n = 1 + q n for q = 0..5, degrees <= 20".into())
}

fn free_ring_series(degrees: &[u32], max: u32) -> Result<Vec<u64>, String> {
    let gens: Vec<(String, u32)> = degrees.iter().enumerate().map(|(i, d)| (format!("g{i}"), *d)).collect();
    let refs: Vec<(&str, u32)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let ring = GradedRing::new(&refs).map_err(err)?;
    Ok((0..=max).map(|n| ring.monomial_basis(n).len() as u64).collect())
}

fn baselines(_: &SuiteOptions) -> Result<String, String> {
    let q0 = closed_form_betti(2, 0, 24).map_err(err)?.ranks();
    ensure(q0 == free_ring_series(&[2, 4], 24)?, || "q=0 differs from Z[2,4]".into())?;
    let q1 = closed_form_betti(2, 1, 24).map_err(err)?.ranks();
    ensure(q1 == free_ring_series(&[2, 2, 4, 4], 24)?, || "q=1 differs from Z[2,2,4,4]".into())?;
    Ok("charge 2: q=0 is Z[2,4], q=1 is Z[2,2,4,4] through degree 24".into())
}

/// Monomial count of `Z[a₁,a₂] ⊕ K_A^q ⊕ K_C^{q(q−1)/2}` by direct enumeration.
fn enumerated_charge2(q: u64, n: u32) -> u64 {
    let count_ideal = |spec: GradedModuleSpec| match spec {
        GradedModuleSpec::MonomialIdeal { ring, generators } => ring
            .monomial_basis(n)
            .iter()
            .filter(|m| generators.iter().any(|g| g.iter().zip(m.iter()).all(|(a, b)| a <= b)))
            .count() as u64,
        _ => unreachable!("ideal spec"),
    };
    let base = GradedRing::new(&[("a1", 2), ("a2", 4)]).expect("ring").monomial_basis(n).len() as u64;
    base + q * count_ideal(k_a_spec()) + q * (q - 1) / 2 * count_ideal(k_c_spec())
}

fn q2_triple(_: &SuiteOptions) -> Result<String, String> {
    let cech = compute_pages(&build_cover_charge2_q2().map_err(err)?, 24).map_err(err)?;
    let simplex = simplex_assembly(2, 24).map_err(err)?.betti;
    let closed = closed_form_betti(2, 2, 24).map_err(err)?;
    ensure(cech.betti == closed, || format!("cech vs closed: {}", first_difference(&cech.betti, &closed)))?;
    ensure(simplex == closed, || format!("simplex vs closed: {}", first_difference(&simplex, &closed)))?;
    ensure(closed.is_torsion_free() && cech.betti.is_torsion_free() && simplex.is_torsion_free(), || "torsion".into())?;
    ensure(cech.betti.odd_vanishes(), || "odd cohomology".into())?;
    for (d, want) in [(2, 3), (4, 9), (6, 18)] {
        let got = cech.betti.rank(d).unwrap_or(0);
        ensure(got == want && enumerated_charge2(2, d) == want, || format!("b_{d} = {got}, expected {want}"))?;
    }
    Ok("Cech = simplex = closed form through degree 24; b2, b4, b6 = 3, 9, 18".into())
}

fn named_arrow(cover: &CoverDescription, s: &str, t: &str) -> RingMap {
    let idx = |n: &str| cover.faces.iter().position(|f| f.name == n).expect("face");
    let (s, t) = (idx(s), idx(t));
    cover.arrows.iter().find(|a| a.from == s && a.to == t).expect("arrow").map.clone()
}

fn kernel_identities(_: &SuiteOptions) -> Result<String, String> {
    let cover = build_cover_charge2_q2().map_err(err)?;
    let n2 = [named_arrow(&cover, "N_2", "N_L"), named_arrow(&cover, "N_2", "N_R")];
    let al = [named_arrow(&cover, "A_L", "A_0")];
    let n2_ring = n2[0].source.clone();
    let kc = GradedModuleSpec::MonomialIdeal { ring: n2_ring, generators: vec![vec![1, 0, 1, 0]] };
    let ka = GradedModuleSpec::ideal_of_generators(al[0].source.clone(), &["aΔ1L", "aΔ2L"]);
    for n in 0..=24 {
        let c = kernel_hilbert(&n2, n).map_err(err)? as u64;
        ensure(c == kc.hilbert(n), || format!("K_C degree {n}: kernel {c}, ideal {}", kc.hilbert(n)))?;
        let a = kernel_hilbert(&al, n).map_err(err)? as u64;
        ensure(a == ka.hilbert(n), || format!("K_AL degree {n}: kernel {a}, ideal {}", ka.hilbert(n)))?;
    }
    Ok("K_C = (cΔL cΔR) and K_AL = (aΔ1L, aΔ2L) through degree 24".into())
}

fn decomposition(_: &SuiteOptions) -> Result<String, String> {
    let rows = decomposition_check_q2(24).map_err(err)?;
    if let Some(r) = rows.iter().find(|r| !r.holds()) {
        return Err(format!("degree {}: {} != {} + {}", r.degree, r.total, r.k_c, r.k_a));
    }
    Ok("rank H^n = rank K_C^n + rank Ker(A_L + A_R -> A_0)^n through degree 24".into())
}

fn general_q(_: &SuiteOptions) -> Result<String, String> {
    for q in 2..=5 {
        let s = simplex_assembly(q, 16).map_err(err)?;
        let closed = closed_form_betti(2, q, 16).map_err(err)?;
        ensure(s.betti == closed, || format!("q={q}: {}", first_difference(&s.betti, &closed)))?;
        ensure(s.bottom_exact_in_middle(), || format!("q={q}: bottom complex not exact in the middle"))?;
        ensure(s.middle_surjective(), || format!("q={q}: star map not onto"))?;
        ensure(s.top_surjective(), || format!("q={q}: d1 onto the top column fails"))?;
    }
    let cech = compute_pages(&build_cover_charge2_q2().map_err(err)?, 16).map_err(err)?;
    ensure(cech.top_surjective_in_even_degrees(), || "q=2 Cech d1 onto E1^2 fails".into())?;
    Ok("simplex assembly = closed form for q = 2..5 through degree 16; collapse preconditions hold".into())
}

fn guards(_: &SuiteOptions) -> Result<String, String> {
    let mut covers: Vec<CoverDescription> = (0..=5).map(build_cover_charge1).collect::<Result<_, _>>().map_err(err)?;
    covers.push(build_cover_charge2_q2().map_err(err)?);
    for c in &covers {
        for n in 0..=24 {
            ensure(c.d1_squared_is_zero(n), || format!("{}: d1 d1 != 0 in degree {n}", c.name))?;
            ensure(c.odd_rows_vanish(n), || format!("{}: E1 odd row in degree {n}", c.name))?;
        }
    }
    Ok(format!("{} covers, degrees <= 24", covers.len()))
}

// ---- randomized monad and gluing properties ----

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn nonzero(&mut self, lo: i64, hi: i64) -> i64 {
        loop {
            let v = self.int(lo, hi);
            if v != 0 {
                return v;
            }
        }
    }

    fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }

    /// Small Gaussian rational, usually an integer.
    fn scalar(&mut self) -> G {
        let re = G::from_ratio(self.int(-6, 6), self.nonzero(1, 3));
        if self.chance(1, 5) {
            re + G::from_ratio(self.int(-3, 3), self.nonzero(1, 2)) * G::i()
        } else {
            re
        }
    }

    fn nonzero_scalar(&mut self) -> G {
        loop {
            let s = self.scalar();
            if s != G::from(0) {
                return s;
            }
        }
    }

    fn vec(&mut self, r: usize) -> Vec<G> {
        (0..r).map(|_| self.scalar()).collect()
    }

    fn raw_matrix(&mut self, rows: usize, cols: usize) -> Matrix<G> {
        let data: Vec<G> = (0..rows * cols).map(|_| self.scalar()).collect();
        Matrix::from_vec(rows, cols, data).expect("sized")
    }

    fn invertible(&mut self, k: usize) -> Matrix<G> {
        loop {
            let g = self.raw_matrix(k, k);
            if g.inverse().is_some() {
                return g;
            }
        }
    }

    /// Framing pair `(b, c)` of a charge-one configuration with `b·c = 0`;
    /// one of them is forced to vanish a quarter of the time each.
    fn framing(&mut self, r: usize) -> (Vec<G>, Vec<G>) {
        let zero = vec![G::from(0); r];
        match self.int(0, 3) {
            0 => (zero, self.vec(r)),
            1 => (self.vec(r), zero),
            _ => {
                let b = self.vec(r);
                let s = self.scalar();
                // c ⟂ b in the bilinear pairing, using the first two entries
                let mut c = zero;
                c[0] = -(s.clone() * b[1].clone());
                c[1] = s * b[0].clone();
                (b, c)
            }
        }
    }

    fn plane_k1(&mut self, a1: G, a2: G) -> Config0<G> {
        let (b, c) = self.framing(2);
        Config0::charge_one(a1, a2, b, c).expect("shapes")
    }

    fn blowup_k1(&mut self, a1: G, a2: G, d: G) -> Config1<G> {
        let (b, c) = self.framing(2);
        Config1::charge_one(a1, a2, d, b, c).expect("shapes")
    }

    /// Perturbation with `|ε|² ≤ 2/25`.
    fn small(&mut self) -> G {
        let re = G::from_ratio(self.int(-2, 2), 10);
        if self.chance(1, 3) {
            re + G::from_ratio(self.int(-2, 2), 10) * G::i()
        } else {
            re
        }
    }
}

fn framings_nonzero<F: crate::exact::Field>(bs: &[&Matrix<F>]) -> bool {
    bs.iter().all(|m| !m.is_zero())
}

fn properties(opts: &SuiteOptions) -> Result<String, String> {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(opts.seed) };
    let trials = opts.trials;
    let mut c_image_hits = 0usize;
    for trial in 0..trials {
        let fail = |what: &str| format!("trial {trial}: {what}");

        // ⊞₀: integrability and the degeneracy criterion
        let (a1, a2) = (g.scalar(), g.scalar());
        let ml = g.plane_k1(a1, a2);
        let mr = loop {
            let (a1, a2) = (g.scalar(), g.scalar());
            if a1 != ml.a1[(0, 0)] {
                break g.plane_k1(a1, a2);
            }
        };
        let y = boxplus0(&ml, &mr).map_err(err)?;
        ensure(y.is_integrable(), || fail("boxplus0 output not integrable"))?;
        let nondeg = y.nondegenerate().map_err(err)?;
        ensure(nondeg == framings_nonzero(&[&ml.b, &ml.c, &mr.b, &mr.c]), || fail("boxplus0 degeneracy criterion"))?;

        // ⊞_L: integrability and the degeneracy criterion
        let (a1p, a2p, dp) = (g.nonzero_scalar(), g.scalar(), g.scalar());
        let m1 = g.blowup_k1(a1p.clone(), a2p, dp.clone());
        let m2 = loop {
            let (a1, a2) = (g.scalar(), g.scalar());
            if a1 != dp.clone() * a1p.clone() {
                break g.plane_k1(a1, a2);
            }
        };
        let x = boxplus_l(&m1, &m2).map_err(err)?;
        ensure(x.is_integrable(), || fail("boxplusL output not integrable"))?;
        let nondeg = x.nondegenerate().map_err(err)?;
        ensure(nondeg == framings_nonzero(&[&m1.b, &m1.c, &m2.b, &m2.c]), || fail("boxplusL degeneracy criterion"))?;

        // monad residual identities on arbitrary charge-two data
        let p = Config0::new(g.raw_matrix(2, 2), g.raw_matrix(2, 2), g.raw_matrix(2, 2), g.raw_matrix(2, 2)).map_err(err)?;
        let res = p.monad_residual();
        ensure(res.coefficient(&[0, 0, 2, 0, 0]) == p.integrability_residual(), || fail("plane residual coefficient"))?;
        ensure(res.terms().keys().all(|m| *m == [0, 0, 2, 0, 0]), || fail("plane residual has extra terms"))?;
        let b1 = Config1::new(g.raw_matrix(2, 2), g.raw_matrix(2, 2), g.raw_matrix(2, 2), g.raw_matrix(2, 2), g.raw_matrix(2, 2))
            .map_err(err)?;
        let res = b1.monad_residual();
        let coeff = res.coefficient(&[0, 0, 2, 0, 0]);
        let mut expect = Matrix::zeros(coeff.rows(), coeff.cols());
        let r1 = b1.integrability_residual();
        for i in 0..2 {
            for j in 0..2 {
                expect[(i, j)] = r1[(i, j)].clone();
            }
        }
        ensure(coeff == expect, || fail("blow-up residual coefficient"))?;
        ensure(res.terms().keys().all(|m| *m == [0, 0, 2, 0, 0]), || fail("blow-up residual has extra terms"))?;

        // π_# ∘ π_x* = τ_x
        let pt = [g.scalar(), g.scalar()];
        ensure(direct_image(&pullback_blowup(&p, &pt)) == translate_tau(&p, &pt), || fail("direct image of pullback"))?;

        // π_L*(m₁ ⊞₀ m₂) = π_L* m₁ ⊞_L τ(m₂), compared through canonical forms
        let lhs = pullback_blowup(&y, &pt);
        let rhs = boxplus_l(&pullback_blowup(&ml, &pt), &translate_tau(&mr, &pt)).map_err(err)?;
        let (e0, e1) = (ml.a1[(0, 0)].clone() - pt[0].clone(), mr.a1[(0, 0)].clone() - pt[0].clone());
        let gap = crate::exact::scalar::rational_sqrt_floor(&crate::exact::NormedField::norm_sq(&(e1.clone() - e0.clone())));
        let delta = gap / BigRational::from_integer(3.into());
        let n0 = NeighborhoodSpec::new(delta.clone(), e0).map_err(err)?;
        let nz = NeighborhoodSpec::new(delta, e1).map_err(err)?;
        let fl = boxplus_l_inverse(&lhs, &n0, &nz).map_err(err)?;
        let fr = boxplus_l_inverse(&rhs, &n0, &nz).map_err(err)?;
        ensure(fl == fr, || fail("pullback of boxplus0 vs boxplusL"))?;

        // H₂ endpoints and defining equations
        h2_trial(&mut g).map_err(|e| fail(&e))?;

        // classification of the image of C against conditions 2 and 3
        if classify_trial(&mut g).map_err(|e| fail(&e))? {
            c_image_hits += 1;
        }
    }
    ensure(c_image_hits > 0 && c_image_hits < trials, || format!("C-image family not mixed: {c_image_hits} hits"))?;
    Ok(format!("{trials} trials each; {c_image_hits} constructed configurations in the image of C"))
}

fn random_x2_point(g: &mut Gen, gl: &Gluing<G>, xl: &[G; 2], xr: &[G; 2]) -> Result<X2Point<G>, String> {
    Ok(match g.int(0, 2) {
        0 => {
            let (el, al2, er, ar2) = (g.small(), g.scalar(), g.small(), g.scalar());
            let ml = g.plane_k1(xl[0].clone() + el, al2);
            let mr = g.plane_k1(xr[0].clone() + er, ar2);
            X2Point::from_plane(&boxplus0(&ml, &mr).map_err(err)?, gl)
        }
        1 => {
            let (al, ar) = (g.nonzero_scalar(), g.nonzero_scalar());
            let (al2, el, ar2, er) = (g.scalar(), g.small(), g.scalar(), g.small());
            let ml = g.blowup_k1(al.clone(), al2, el / al);
            let mr = g.blowup_k1(ar.clone(), ar2, er / ar);
            X2Point::glue(&ml, &mr, gl).map_err(err)?
        }
        _ => {
            let (al, al2, ar, ar2) = (g.nonzero_scalar(), g.scalar(), g.nonzero_scalar(), g.scalar());
            let left_s0 = g.blowup_k1(al, al2, G::from(0));
            let right_s0 = g.blowup_k1(ar, ar2, G::from(0));
            X2Point::C { left_s0, right_s0 }
        }
    })
}

fn h2_trial(g: &mut Gen) -> Result<(), String> {
    let xl = [G::from(g.int(-3, 3)), G::from(g.int(-3, 3))];
    let z1 = g.int(4, 9) * if g.chance(1, 2) { 1 } else { -1 };
    let xr = [xl[0].clone() + G::from(z1), xl[1].clone() + G::from(g.int(-3, 3))];
    let gl = Gluing::new(BlowupCenters::new(xl.clone(), xr.clone()).map_err(err)?);
    let ts = [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)];
    // only points whose sides are stable configurations
    let point = loop {
        let p = random_x2_point(g, &gl, &xl, &xr)?;
        let (l, r) = p.sides(&gl).map_err(err)?;
        if l.is_integrable() && r.is_integrable() {
            break p;
        }
    };
    ensure(h2(&point, &rat(1, 1), &gl).map_err(err)? == point, || "H2(x, 1) != x".into())?;
    let (left, right) = point.sides(&gl).map_err(err)?;
    let fixed = point.is_c_point()
        || (classify_c_image(&left, &gl.centers).map_err(err)?.is_in_image()
            && classify_c_image(&right, &gl.mirrored().centers).map_err(err)?.is_in_image());
    for t in &ts {
        let out = h2(&point, t, &gl).map_err(err)?;
        if fixed {
            ensure(out == point, || format!("point of C moved at t = {t}"))?;
            continue;
        }
        let (nl, nr) = out.sides(&gl).map_err(err)?;
        ensure(nl == gl.h_l(&left, t).map_err(err)?, || format!("left equation fails at t = {t}"))?;
        ensure(nr == gl.h_r(&right, t).map_err(err)?, || format!("right equation fails at t = {t}"))?;
        if *t == rat(0, 1) {
            ensure(out.is_c_point(), || "H2(x, 0) is not a C-point".into())?;
            let il = classify_c_image(&nl, &gl.centers).map_err(err)?.is_in_image();
            let ir = classify_c_image(&nr, &gl.mirrored().centers).map_err(err)?.is_in_image();
            ensure(il && ir, || "H2(x, 0) sides are not in the image of C".into())?;
        }
    }
    Ok(())
}

/// Builds `m′ ⊞_L m″` from factors that may or may not come from C, moves
/// it by a random group element and checks condition 2 ⇔ condition 3 ⇔
/// classification. Returns whether the configuration is in the image.
fn classify_trial(g: &mut Gen) -> Result<bool, String> {
    let z = [G::from(g.nonzero(-5, 5)), G::from(g.int(-3, 3))];
    let centers = BlowupCenters::new([G::from(0), G::from(0)], z.clone()).map_err(err)?;
    let a1p = g.nonzero_scalar();
    let dp = if g.chance(1, 2) { G::from(0) } else { g.nonzero_scalar() };
    let a2p = g.scalar();
    let m1 = g.blowup_k1(a1p.clone(), a2p, dp.clone());
    let (a1pp, a2pp) = if g.chance(2, 3) {
        (z[0].clone(), z[1].clone())
    } else {
        (z[0].clone() + G::from(g.nonzero(1, 3)), z[1].clone() + G::from(g.int(0, 2)))
    };
    if a1pp == dp * a1p || a1pp == G::from(0) {
        return Ok(false);
    }
    let m2 = g.plane_k1(a1pp, a2pp);
    let m = boxplus_l(&m1, &m2).map_err(err)?;
    let (g0, g1) = (g.invertible(2), g.invertible(2));
    let moved = m.act(&g0, &g1).map_err(err)?;
    let c2 = lemma_condition2(&moved, &z).map_err(err)?;
    let c3 = lemma_condition3(&moved, &z).map_err(err)?;
    ensure(c2 == c3, || format!("conditions disagree: 2 is {c2}, 3 is {c3}"))?;
    let image = classify_c_image(&moved, &centers).map_err(err)?.is_in_image();
    ensure(image == c2, || "classification disagrees with conditions 2 and 3".into())?;
    Ok(image)
}
