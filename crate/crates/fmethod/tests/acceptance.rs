//! Acceptance gate: the ten exact certificates, one test (and one
//! pass/fail line) per criterion, all with zero tolerance over Q(i).

use std::time::Instant;

use fmethod::dual::{
    b_operator, d_hat_ops, dualize, explicit_da, factorized_da, intertwine_defect,
};
use fmethod::fischer::{build_sl2_ops, mm_basis};
use fmethod::liealg::{full_basis, BasisTag, UbarElem, UbarGen};
use fmethod::rep::{check_homomorphism, pi_geom, pi_hat, RepParams, SigmaModel};
use fmethod::scalar::{rat, GaussScalar};
use fmethod::singular::{classify, recurrence_verify, t_coefficients, t_operator, ClassificationCase};
use fmethod::verma::{beta_qs_expand, phi0_build, qs_ps_elems, tau_phi_apply};
use fmethod::weyl::{slice_basis, PolyVec, VarSpace, WeylOp};

fn budget(name: &str, start: Instant, seconds: u64) {
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < seconds,
        "{name} exceeded the {seconds} s budget: {elapsed:?}"
    );
    println!("[PASS] {name} ({elapsed:?})");
}

fn lambdas() -> Vec<GaussScalar> {
    vec![
        GaussScalar::zero(),
        GaussScalar::from_ratio(1, 3),
        GaussScalar::from_ratio(-3, 2),
        GaussScalar::from_ratio(5, 2),
        GaussScalar::from_ratio(7, 11),
    ]
}

#[test]
fn criterion_01_lie_homomorphism() {
    let start = Instant::now();
    for n in 1..=3usize {
        for lambda in lambdas() {
            let p = RepParams::new(n, lambda.clone());
            assert!(
                check_homomorphism(|t| pi_hat(&p, t), n).is_empty(),
                "pi_hat defects at n={n}, lambda={lambda}"
            );
            assert!(
                check_homomorphism(|t| pi_geom(&p, SigmaModel::Ssw, t), n).is_empty(),
                "pi_geom(ssw) defects at n={n}, lambda={lambda}"
            );
            assert!(
                check_homomorphism(|t| pi_geom(&p, SigmaModel::SswDual, t), n).is_empty(),
                "pi_geom(ssw_dual) defects at n={n}, lambda={lambda}"
            );
        }
    }
    budget(
        "criterion 1: Lie-homomorphism certificate (n <= 3, five weights)",
        start,
        60,
    );
}

#[test]
fn criterion_02_sl2_relations() {
    let start = Instant::now();
    for n in 1..=3usize {
        let space = VarSpace::fourier(n);
        let (d_s, e, x_s) = build_sl2_ops(space);
        let en = e.add(&WeylOp::constant(space, GaussScalar::from_int(n as i64)));
        assert!(en.commutator(&d_s).add(&d_s).is_zero(), "[E+n,D_s] != -D_s");
        assert!(
            x_s.commutator(&d_s)
                .sub(&en.scale(&GaussScalar::i()))
                .is_zero(),
            "[X_s,D_s] != i(E+n)"
        );
        assert!(en.commutator(&x_s).sub(&x_s).is_zero(), "[E+n,X_s] != X_s");
    }
    budget("criterion 2: sl(2) commutation relations (n <= 3)", start, 1);
}

#[test]
fn criterion_03_ladder_lemma() {
    let start = Instant::now();
    for n in 1..=2usize {
        let space = VarSpace::fourier(n);
        let (d_s, _, x_s) = build_sl2_ops(space);
        for m in 0..=4u32 {
            let slice = mm_basis(n, m, 3);
            for v in &slice.basis {
                for r in 1..=6u32 {
                    let lhs = d_s.apply(&x_s.pow(r as usize).apply(v));
                    let coef = -GaussScalar::i().scale(&rat(
                        r as i64 * (2 * m as i64 + 2 * n as i64 + r as i64 - 1),
                        2,
                    ));
                    let rhs = x_s.pow(r as usize - 1).apply(v).scale(&coef);
                    assert_eq!(lhs, rhs, "ladder fails at n={n}, m={m}, r={r}");
                }
            }
        }
    }
    budget(
        "criterion 3: ladder lemma D_s X_s^r v = -i r(2m+2n+r-1)/2 X_s^(r-1) v",
        start,
        30,
    );
}

#[test]
fn criterion_04_classification_rows() {
    let start = Instant::now();
    use ClassificationCase::*;
    // (n, lambda, expected case, expected theorem row)
    let rows: Vec<(usize, GaussScalar, ClassificationCase, u32)> = vec![
        (1, GaussScalar::from_ratio(-1, 3), GenericM0Only, 1),
        (1, GaussScalar::zero(), IntegerCaseT, 2),
        (1, GaussScalar::from_ratio(-3, 2), HalfIntegerCaseT, 3),
        (1, GaussScalar::from_ratio(-1, 2), N1FullCase, 4),
        (2, GaussScalar::from_ratio(-1, 3), GenericM0Only, 1),
        (2, GaussScalar::from_int(-1), IntegerCaseT, 2),
        (2, GaussScalar::from_ratio(-3, 2), HalfIntegerCaseT, 3),
        (2, GaussScalar::from_ratio(-1, 2), HalfIntegerCaseMAndX, 4),
    ];
    for (n, lambda, case, row) in rows {
        let report = classify(n, &lambda, 5, 4);
        assert_eq!(report.classification_case, case, "n={n}, lambda={lambda}");
        assert_eq!(report.theorem_row, row, "n={n}, lambda={lambda}");
        assert!(report.matches, "box mismatch at n={n}, lambda={lambda}");
    }
    // generic negative control: nothing outside the M_0 slice
    for n in 1..=2usize {
        let report = classify(n, &GaussScalar::from_ratio(7, 11), 5, 4);
        assert_eq!(report.classification_case, GenericM0Only);
        assert!(report.matches);
        for (i, (m, _)) in report.boxes.iter().enumerate() {
            if *m > 0 {
                assert_eq!(report.kernel_dims[i], 0, "spurious kernel at m={m}, n={n}");
            }
        }
    }
    budget(
        "criterion 4: classification theorem, all eight rows plus generic control",
        start,
        600,
    );
}

#[test]
fn criterion_05_t_operator() {
    let start = Instant::now();
    for n in 1..=3usize {
        for a in 1..=10u32 {
            assert!(
                recurrence_verify(n, a, &t_coefficients(n, a)),
                "recurrence fails at n={n}, a={a}"
            );
        }
    }
    // T^n_a v0 is a singular vector at lambda_hat = a/2
    for n in 1..=2usize {
        let space = VarSpace::fourier(n);
        for a in 1..=6u32 {
            let params = RepParams::new(n, GaussScalar::from_rational(rat(a as i64, 2)));
            let t = t_operator(n, a);
            for e in slice_basis(space, 0, 3) {
                let v0 = PolyVec::monomial(space, e, GaussScalar::one());
                let tv = t.apply(&v0);
                for i in 0..n {
                    assert!(
                        pi_hat(&params, BasisTag::D(i)).apply(&tv).is_zero(),
                        "pi_hat(d_{i}) does not annihilate T^{n}_{a} v0"
                    );
                    assert!(
                        pi_hat(&params, BasisTag::E(i)).apply(&tv).is_zero(),
                        "pi_hat(e_{i}) does not annihilate T^{n}_{a} v0"
                    );
                }
            }
        }
    }
    budget(
        "criterion 5: T-operator recurrence (a <= 10, n <= 3) and singularity",
        start,
        60,
    );
}

fn c_elem(n: usize) -> UbarElem {
    UbarElem::generator(n, UbarGen::C)
}

#[test]
fn criterion_06_beta_expansion() {
    let start = Instant::now();
    for n in 1..=3usize {
        let (_, ps) = qs_ps_elems(n);
        let c = c_elem(n);
        let ni = n as i64;
        let printed: Vec<UbarElem> = vec![
            ps.clone(),
            // P_s^2 - (i/2) n c
            ps.pow(2).sub(&c.scale(&GaussScalar::i().scale(&rat(ni, 2)))),
            // P_s^3 - (i/2)(3n+1) P_s c
            ps.pow(3)
                .sub(&ps.mul(&c).scale(&GaussScalar::i().scale(&rat(3 * ni + 1, 2)))),
            // P_s^4 - (i/2)(6n+4) P_s^2 c - (1/4)(3n^2+3n) c^2
            ps.pow(4)
                .sub(
                    &ps.pow(2)
                        .mul(&c)
                        .scale(&GaussScalar::i().scale(&rat(6 * ni + 4, 2))),
                )
                .sub(&c.pow(2).scale(&GaussScalar::from_rational(rat(3 * ni * ni + 3 * ni, 4)))),
        ];
        for (k, rhs) in printed.iter().enumerate() {
            let lhs = beta_qs_expand(n, k + 1);
            assert!(lhs.sub(rhs).is_zero(), "beta identity k={} n={n}", k + 1);
        }
    }
    budget("criterion 6: beta-expansion printed identities (n <= 3)", start, 10);
}

#[test]
fn criterion_07_phi0() {
    let start = Instant::now();
    for n in 1..=3usize {
        let (_, ps) = qs_ps_elems(n);
        let c = c_elem(n);
        let ni = n as i64;
        let printed: Vec<UbarElem> = vec![
            ps.clone(),
            // P_s^2 - i(n + 1/4) c
            ps.pow(2)
                .sub(&c.scale(&GaussScalar::i().scale(&(rat(ni, 1) + rat(1, 4))))),
            // P_s^3 - i(3n + 2) c P_s
            ps.pow(3)
                .sub(&c.mul(&ps).scale(&GaussScalar::i().scale(&rat(3 * ni + 2, 1)))),
            // P_s^4 - i(6n + 13/2) c P_s^2 - (3n^2 + (9/2)n + 9/16) c^2
            ps.pow(4)
                .sub(
                    &c.mul(&ps.pow(2))
                        .scale(&GaussScalar::i().scale(&(rat(6 * ni, 1) + rat(13, 2)))),
                )
                .sub(&c.pow(2).scale(&GaussScalar::from_rational(
                    rat(3 * ni * ni, 1) + rat(9 * ni, 2) + rat(9, 16),
                ))),
        ];
        for (idx, rhs) in printed.iter().enumerate() {
            let a = idx as u32 + 1;
            let hom = phi0_build(n, a);
            assert!(hom.element.sub(rhs).is_zero(), "phi_0 formula a={a} n={n}");
        }
    }
    // defining commuting square on test slices
    for n in 1..=2usize {
        let space = VarSpace::fourier(n);
        for a in 1..=4u32 {
            let params = RepParams::new(n, GaussScalar::from_rational(rat(a as i64, 2)));
            let hom = phi0_build(n, a);
            let t = t_operator(n, a);
            for e in slice_basis(space, 0, 2) {
                let v0 = PolyVec::monomial(space, e, GaussScalar::one());
                assert_eq!(
                    tau_phi_apply(&params, &hom.element, &v0),
                    t.apply(&v0),
                    "commuting square fails at n={n}, a={a}"
                );
            }
        }
    }
    budget(
        "criterion 7: phi_0 printed formulas (a <= 4, n <= 3) and commuting square",
        start,
        60,
    );
}

#[test]
fn criterion_08_duality() {
    let start = Instant::now();
    for n in 1..=2usize {
        for a in 1..=4u32 {
            assert_eq!(
                dualize(&phi0_build(n, a).element),
                explicit_da(n, a).op,
                "dualize(phi_0) != D_{a} at n={n}"
            );
        }
    }
    budget("criterion 8: dualize(phi_0) equals printed D_a (a <= 4, n <= 2)", start, 60);
}

#[test]
fn criterion_09_intertwining() {
    let start = Instant::now();
    for n in 1..=2usize {
        for a in 1..=4u32 {
            let d = explicit_da(n, a).op;
            for be in full_basis(n) {
                assert!(
                    intertwine_defect(n, a, &d, be.tag).is_zero(),
                    "defect at n={n}, a={a}, X={}",
                    be.tag
                );
            }
        }
    }
    // negative control: D_hat_s without the (1/2) X_hat_s dz correction
    let (d_hat, _) = d_hat_ops(1);
    assert!(
        !intertwine_defect(1, 1, &d_hat, BasisTag::D(0)).is_zero(),
        "bare D_hat_s must fail to intertwine"
    );
    assert!(intertwine_defect(1, 1, &b_operator(1), BasisTag::D(0)).is_zero());
    budget(
        "criterion 9: intertwining certificate (a <= 4, n <= 2) with negative control",
        start,
        300,
    );
}

#[test]
fn criterion_10_factorization() {
    let start = Instant::now();
    for n in 1..=2usize {
        for a in 1..=4u32 {
            assert_eq!(
                factorized_da(n, a),
                explicit_da(n, a).op,
                "factorized form differs at n={n}, a={a}"
            );
        }
        for a in 5..=6u32 {
            let d = factorized_da(n, a);
            for be in full_basis(n) {
                assert!(
                    intertwine_defect(n, a, &d, be.tag).is_zero(),
                    "factorized D_{a} defect at n={n}, X={}",
                    be.tag
                );
            }
        }
    }
    budget(
        "criterion 10: factorization evidence (a <= 4) and D_5, D_6 intertwining",
        start,
        600,
    );
}
