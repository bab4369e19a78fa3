//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`) and enforcing the stated runtime budget.

use num_rational::BigRational;
use num_traits::{One, Zero};
use pinchcheck::curvature::{
    complex_hyperbolic_g, derivation_extend, random_pinched_kahler, verify_bishop_goldberg,
    ComplexStructure, CurvatureTensor, OptimizeConfig, TensorSpace,
};
use pinchcheck::exact::{exact_compare, ExactScalar, Ordering3};
use pinchcheck::fiber::{
    eq_5_4_certificate, sphere_integrate, vertical_gradient, verify_g_identity_s2,
    verify_g_identity_tm, AdmissibleSampler, Constraints, ESpace, Poly, PolySection,
};
use pinchcheck::lie::{
    e6_cubic_invariant_dim, enumerate_exclusion_table, radon_hurwitz, Algebra, WeightLattice,
};
use pinchcheck::thresholds::{
    b_coeff, c_coeff, chain_certificates, lambda1, lambda2, lambda_final, verify_monotonicity,
    verify_threshold_table,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn criterion_1_threshold_constants() {
    let start = Instant::now();
    assert_eq!(lambda_final(6), rat(1979, 2121));
    // decimal prefix 0.9330
    let scaled = (rat(1979, 2121) * BigRational::from_integer(10_000.into())).floor();
    assert_eq!(scaled, BigRational::from_integer(9330.into()));
    let limit = rat(11, 12);
    let mut prev: Option<BigRational> = None;
    let mut prev_gap: Option<BigRational> = None;
    let mut m = 6i64;
    while m <= 200 {
        let lam = lambda_final(m);
        assert!(lam > limit, "λ({m}) ≤ 11/12");
        if let Some(p) = &prev {
            assert!(&lam < p, "λ not strictly decreasing at m = {m}");
        }
        let gap = &lam - &limit;
        if let Some(pg) = &prev_gap {
            assert!(&gap < pg, "gap to 11/12 not monotone at m = {m}");
        }
        prev = Some(lam);
        prev_gap = Some(gap);
        m += 2;
    }
    // difference → 0: the final gap is below 1/(2·200)
    assert!(prev_gap.unwrap() < rat(1, 400));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "budget 1 s, took {elapsed:?}");
    println!("ACCEPTANCE criterion 1 (threshold constants): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_root_consistency() {
    let start = Instant::now();
    for n in (4..=40).step_by(2) {
        for k in 2..=12 {
            let b = b_coeff(n, k).unwrap();
            let c = c_coeff(n, k).unwrap();
            let l1 = lambda1(n, k).unwrap();
            assert!(
                b.eval(&l1).is_zero(),
                "B({n},{k}) at λ₁ not exactly zero"
            );
            let half = ExactScalar::ratio(1, 2);
            let bc = b.add(&c.scale(&half));
            let l2 = lambda2(n, k).unwrap();
            assert!(
                bc.eval(&l2).is_zero(),
                "(B+C/2)({n},{k}) at λ₂ not exactly zero"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "budget 10 s, took {elapsed:?}");
    println!("ACCEPTANCE criterion 2 (root consistency): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_monotonicity() {
    let start = Instant::now();
    for n in [4i64, 8, 12, 24, 56] {
        let certs = verify_monotonicity(n, 200).unwrap();
        assert!(!certs.is_empty());
        for cert in &certs {
            assert!(cert.holds(), "monotonicity failed at n = {n}: {cert:?}");
        }
    }
    println!(
        "ACCEPTANCE criterion 3 (Lemma 5.4 monotonicity): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_4_final_chain() {
    let start = Instant::now();
    for cert in chain_certificates() {
        assert!(cert.holds(), "{cert:?}");
    }
    let (rows, certs) = verify_threshold_table(6, 200).unwrap();
    assert_eq!(rows.len(), 98);
    for cert in &certs {
        assert!(cert.holds(), "{cert:?}");
    }
    assert!(certs
        .iter()
        .any(|c| c.claim_id == "section5.2.sqrt-bound" && c.holds()));
    // side claims: 16√2 < 68/3 and 64/√3 = (64/3)√3 < 37
    let lhs1 = ExactScalar::sqrt_with_coeff(rat(16, 1), 2);
    assert_eq!(exact_compare(&lhs1, &ExactScalar::ratio(68, 3)), Ordering3::Less);
    let lhs2 = ExactScalar::sqrt_with_coeff(rat(64, 3), 3);
    assert_eq!(exact_compare(&lhs2, &ExactScalar::ratio(37, 1)), Ordering3::Less);
    println!(
        "ACCEPTANCE criterion 4 (final chain): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_5_fiber_identities() {
    let start = Instant::now();
    let tm_cons = Constraints {
        iota_v_iota_v_degree: false,
        j_commute: false,
        ..Constraints::all()
    };
    // Lemma 4.3(ii) needs harmonicity, the ι_v-degree condition and
    // [J, f] = 0; the ι_vι_v condition is a separate (optional)
    // admissibility refinement not assumed by the identity.
    let s2_cons = Constraints {
        iota_v_degree: true,
        iota_jv_degree: false,
        iota_v_iota_v_degree: false,
        j_commute: true,
    };
    for (n, k) in [(4usize, 2usize), (8, 2), (8, 4)] {
        let tm = AdmissibleSampler::new(n, k, ESpace::V, &tm_cons, 1).unwrap();
        let s2 = AdmissibleSampler::new(n, k, ESpace::S2V, &s2_cons, 2).unwrap();
        for seed in 0..20u64 {
            let section = tm
                .sample(seed)
                .unwrap_or_else(|| panic!("no TM admissible section at ({n},{k})"));
            let cert = verify_g_identity_tm(&section).unwrap();
            assert!(cert.holds(), "4.3(i) at ({n},{k}) seed {seed}: {cert:?}");
            let section = s2
                .sample(seed)
                .unwrap_or_else(|| panic!("no S²V admissible section at ({n},{k})"));
            let cert = verify_g_identity_s2(&section).unwrap();
            assert!(cert.holds(), "4.3(ii) at ({n},{k}) seed {seed}: {cert:?}");
        }
    }
    let c8 = eq_5_4_certificate(8).unwrap();
    assert!(c8.holds());
    assert_eq!(c8.witnesses.get("ratio").map(String::as_str), Some("1/24"));
    let c12 = eq_5_4_certificate(12).unwrap();
    assert!(c12.holds());
    assert_eq!(c12.witnesses.get("ratio").map(String::as_str), Some("1/60"));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "budget 2 min, took {elapsed:?}");
    println!("ACCEPTANCE criterion 5 (fiber identities): PASS in {elapsed:?}");
}

fn random_orthonormal_pair(n: usize, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if nx < 1e-3 {
            continue;
        }
        x.iter_mut().for_each(|v| *v /= nx);
        let proj: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        y.iter_mut().zip(&x).for_each(|(v, a)| *v -= proj * a);
        let ny = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if ny < 1e-3 {
            continue;
        }
        y.iter_mut().for_each(|v| *v /= ny);
        return (x, y);
    }
}

#[test]
fn criterion_6_curvature_bounds() {
    let start = Instant::now();
    let lambda = 0.95f64;
    let cfg = OptimizeConfig {
        restarts: 16,
        seed: 41,
        ..OptimizeConfig::default()
    };
    for trial in 0..20u64 {
        let n = if trial < 10 { 4 } else { 8 };
        let sample = random_pinched_kahler(n, lambda, trial).unwrap();
        let report = verify_bishop_goldberg(&sample.tensor, &sample.jay, lambda, &cfg);
        assert!(
            report.all_bounds_hold(),
            "Bishop-Goldberg failed at n = {n}, seed {trial}: {report:?}"
        );
        // Lemma 2.4: |R̄₀(X,Y)| ≤ 1 − λ on random orthonormal pairs.
        let jay = ComplexStructure::canonical(n);
        let g: CurvatureTensor<f64> = complex_hyperbolic_g(&jay);
        let r0 = sample.tensor.r0_decompose(&g, (1.0 + lambda) / 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(trial ^ 0xace5);
        for _ in 0..200 {
            let (x, y) = random_orthonormal_pair(n, &mut rng);
            let v = r0.sectional(&x, &y);
            assert!(
                v.abs() <= (1.0 - lambda) + 1e-7,
                "|R̄₀| = {} > 1−λ at n = {n}, seed {trial}",
                v.abs()
            );
        }
        // derivation bound 4p/3·(1−λ) for p ≤ 2, acting by R₀
        for (p, space) in [(1, TensorSpace::Exterior), (2, TensorSpace::Symmetric)] {
            let action = derivation_extend(&r0, p, space);
            let check = action.sample_bound(lambda, 400, trial ^ 0xbeef, 1e-7);
            assert!(
                check.holds,
                "derivation bound p = {p} failed at n = {n}, seed {trial}: {check:?}"
            );
        }
    }
    // H of the exact G tensor is −1 exactly (rational arithmetic).
    let jay = ComplexStructure::canonical(4);
    let g_exact: CurvatureTensor<BigRational> = complex_hyperbolic_g(&jay);
    let minus_one = -BigRational::one();
    for x in [
        vec![rat(3, 5), rat(4, 5), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(5, 13), rat(12, 13)],
        vec![rat(3, 5), rat(0, 1), rat(4, 5), rat(0, 1)],
        vec![rat(1, 3), rat(2, 3), rat(2, 3), rat(0, 1)],
    ] {
        assert_eq!(g_exact.holomorphic(&jay, &x), minus_one, "H(G) ≠ −1 at {x:?}");
    }
    println!(
        "ACCEPTANCE criterion 6 (curvature bounds): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_7_lie_arithmetic() {
    let start = Instant::now();
    let (survivors, cert) = enumerate_exclusion_table(13).unwrap();
    assert!(cert.holds(), "{cert:?}");
    assert_eq!(survivors.len(), 3);
    assert_eq!(
        survivors.iter().filter(|s| s.algebra == Algebra::E6 && s.dim == 27).count(),
        2
    );
    assert_eq!(
        survivors.iter().filter(|s| s.algebra == Algebra::G2 && s.dim == 7).count(),
        1
    );
    // Weyl dimensions 7, 14, 27, 52, 78, 133, 248
    let g2 = WeightLattice::new(Algebra::G2);
    assert_eq!(g2.weyl_dimension(&[1, 0]).unwrap(), 7.into());
    assert_eq!(g2.weyl_dimension(&[0, 1]).unwrap(), 14.into());
    let e6 = WeightLattice::new(Algebra::E6);
    assert_eq!(e6.weyl_dimension(&[1, 0, 0, 0, 0, 0]).unwrap(), 27.into());
    for (alg, dim) in [(Algebra::F4, 52), (Algebra::E6, 78), (Algebra::E7, 133), (Algebra::E8, 248)]
    {
        let lat = WeightLattice::new(alg);
        assert_eq!(lat.weyl_dimension(&lat.adjoint_weight()).unwrap(), dim.into());
    }
    assert_eq!(radon_hurwitz(16), 9);
    for p in 3..=10_000u64 {
        assert!(radon_hurwitz(4 * p + 4) <= 2 * p + 3, "p = {p}");
    }
    assert!(e6_cubic_invariant_dim().unwrap() >= 1);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "budget 5 min, took {elapsed:?}");
    println!("ACCEPTANCE criterion 7 (Lie arithmetic): PASS in {elapsed:?}");
}

fn random_poly(n: usize, rng: &mut ChaCha8Rng) -> Poly {
    let terms: Vec<(Vec<u8>, BigRational)> = (0..rng.gen_range(1..6))
        .map(|_| {
            let e: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            (e, BigRational::from_integer(rng.gen_range(-9i64..=9).into()))
        })
        .collect();
    Poly::from_terms(n, terms)
}

#[test]
fn criterion_8_property_suites() {
    // 200 seeded cases per property (the proptest suites in
    // tests/properties.rs run the same invariants with shrinkable
    // generators).
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let n = 4usize;
    for _ in 0..200 {
        // Parseval
        let f = random_poly(n, &mut rng);
        let total = sphere_integrate(&f.mul(&f));
        let section = PolySection::scalar(f.clone());
        let mut sum = BigRational::zero();
        for k in 0..=f.degree().unwrap_or(0) {
            let p = section.degree_project(k);
            sum += sphere_integrate(&p.comp(0).mul(p.comp(0)));
        }
        assert_eq!(total, sum, "Parseval");
        // integration by parts
        let g = random_poly(n, &mut rng);
        let (gf, gg) = (vertical_gradient(&f), vertical_gradient(&g));
        let mut lhs = Poly::zero(n);
        for (a, b) in gf.iter().zip(&gg) {
            lhs = lhs.add(&a.mul(b));
        }
        let rhs = f.mul(PolySection::scalar(g).vertical_laplacian().comp(0));
        assert_eq!(sphere_integrate(&lhs), sphere_integrate(&rhs), "parts");
        // tangency
        let mut radial = Poly::zero(n);
        for (i, gi) in gf.iter().enumerate() {
            radial = radial.add(&gi.mul_var(i));
        }
        assert!(sphere_integrate(&radial.mul(&radial)).is_zero(), "tangency");
        // enclosure soundness
        let q = rat(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=12));
        let d = [2u64, 3, 5, 6, 7][rng.gen_range(0..5)];
        let s = ExactScalar::sqrt_with_coeff(q.clone(), d);
        let iv = s.eval_interval(rng.gen_range(8..64));
        let sq = &q * &q * BigRational::from_integer((d as i64).into());
        assert!(iv.mul(&iv).contains_rational(&sq), "enclosure");
        // comparison transitivity
        let mk = |rng: &mut ChaCha8Rng| {
            ExactScalar::from_rational(rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=8)))
                .add_ref(&ExactScalar::sqrt_with_coeff(
                    rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=8)),
                    [2u64, 3, 5, 7][rng.gen_range(0..4)],
                ))
        };
        let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        let le = |x: &ExactScalar, y: &ExactScalar| exact_compare(x, y) != Ordering3::Greater;
        if le(&a, &b) && le(&b, &c) {
            assert!(le(&a, &c), "transitivity");
        }
    }
    println!(
        "ACCEPTANCE criterion 8 (property suites): PASS in {:?}",
        start.elapsed()
    );
}
