//! Singular vectors: exact box-relative kernels of the solution
//! operators, the lambda conditions and recurrences, the operator T^n_a,
//! and the comparison against the classification theorem.

use num::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::fischer::{build_sl2_ops, mm_basis, operator_kernel};
use crate::liealg::BasisTag;
use crate::linalg::{SpanReducer, SparseRow};
use crate::rep::{pi_hat, RepParams};
use crate::scalar::{gen_binomial, rat, rat_int, GaussScalar, Rational};
use crate::weyl::{slice_basis, Exponents, PolyVec, VarSpace, WeylOp};

/// Box-relative kernel of the stacked solution operators on one
/// homogeneity slice.
#[derive(Clone, Debug)]
pub struct KernelSlice {
    pub m: u32,
    pub q_max: u32,
    pub basis: Vec<PolyVec>,
}

/// Exact nullspace of {pi_hat(d_i), pi_hat(e_i)} on the (m, q <= q_max)
/// slice; membership is exact (images are not truncated). Annihilation by
/// pi_hat(a) is implied by [d, e] = a and asserted.
pub fn kernel_search(params: &RepParams, m: u32, q_max: u32) -> KernelSlice {
    let space = VarSpace::fourier(params.n);
    let mut ops = Vec::new();
    for i in 0..params.n {
        ops.push(pi_hat(params, BasisTag::D(i)));
        ops.push(pi_hat(params, BasisTag::E(i)));
    }
    let domain = slice_basis(space, m, q_max);
    let basis = operator_kernel(space, &domain, &ops);
    let a_op = pi_hat(params, BasisTag::A);
    for v in &basis {
        assert!(
            a_op.apply(v).is_zero(),
            "kernel vector not annihilated by pi_hat(a)"
        );
    }
    KernelSlice { m, q_max, basis }
}

/// The unique lambda admitting a singular vector of shape (m, r), from
/// the k = 0 recurrence; (0, 0) admits every lambda.
pub fn lambda_candidates(m: u32, r: u32, n: usize) -> Option<Rational> {
    if m == 0 && r == 0 {
        return None;
    }
    let m = m as i64;
    let r = r as i64;
    let n = n as i64;
    Some(rat((m + r) * (m + r) + m * (m + 2 * n - 1), 2 * (m + r)))
}

/// Coefficients a_k of T^n_a = sum_k a_k z^k X_s^(a-2k):
/// a_k = i^k (k!)^2 binom(a/2, k) binom(a/2 - 1/2, k) binom(a/2 - 1/2 + n, k).
/// The (k!)^2 is forced by the defining recurrence
/// a_(k+1) = (i/(8(k+1)))(a-2k)(a-2k-1)(2n+a-2k-1) a_k, since each of the
/// three falling-factorial products contributes 2^k k! times a binomial.
pub fn t_coefficients(n: usize, a: u32) -> Vec<GaussScalar> {
    let half_a = rat(a as i64, 2);
    (0..=a / 2)
        .map(|k| {
            let k = k as usize;
            let mut fact = Rational::one();
            for j in 1..=k {
                fact *= rat_int(j as i64);
            }
            let coef = (&fact * &fact)
                * gen_binomial(&half_a, k)
                * gen_binomial(&(&half_a - rat(1, 2)), k)
                * gen_binomial(&(&half_a - rat(1, 2) + rat_int(n as i64)), k);
            GaussScalar::i_pow(k).scale(&coef)
        })
        .collect()
}

/// The differential operator T^n_a in normal form.
pub fn t_operator(n: usize, a: u32) -> WeylOp {
    assert!(a >= 1);
    let space = VarSpace::fourier(n);
    let (_, _, x_s) = build_sl2_ops(space);
    let z = WeylOp::mult_var(space, crate::weyl::Var::Z);
    let coefs = t_coefficients(n, a);
    let mut out = WeylOp::zero(space);
    for (k, c) in coefs.iter().enumerate() {
        out = out.add(
            &z.pow(k)
                .mul(&x_s.pow((a as usize) - 2 * k))
                .scale(c),
        );
    }
    out
}

/// Checks the m = 0 recurrence
/// 2(k+1) a_(k+1) - (i/4)(r-2k)(r-2k-1)(2n+r-2k-1) a_k = 0.
pub fn recurrence_verify(n: usize, r: u32, coeffs: &[GaussScalar]) -> bool {
    if coeffs.len() != (r / 2 + 1) as usize {
        return false;
    }
    let n = n as i64;
    let r = r as i64;
    for k in 0..r / 2 {
        let factor = GaussScalar::i().scale(&rat(
            (r - 2 * k) * (r - 2 * k - 1) * (2 * n + r - 2 * k - 1),
            4,
        ));
        let lhs = coeffs[(k + 1) as usize].scale(&rat_int(2 * (k + 1)))
            - &factor * &coeffs[k as usize];
        if !lhs.is_zero() {
            return false;
        }
    }
    true
}

/// Checks the general (m, r) recurrences for a candidate
/// R = sum_k a_k z^k X_s^(r-2k) v_m.
pub fn general_recurrence_verify(
    n: usize,
    m: u32,
    r: u32,
    lambda: &GaussScalar,
    coeffs: &[GaussScalar],
) -> bool {
    if coeffs.len() != (r / 2 + 1) as usize {
        return false;
    }
    let ni = n as i64;
    let mi = m as i64;
    let ri = r as i64;
    for k in 0..=ri / 2 {
        let a_k = &coeffs[k as usize];
        // (rec1): ((r-2k+m)(r-k+m-lambda+n-1/2) - (1/2)(r-2k)(2m+2n+r-2k-1)) a_k
        let inner = GaussScalar::from_rational(
            rat_int(ri - k + mi + ni) - rat(1, 2),
        ) - lambda.clone();
        let rec1 = inner.scale(&rat_int(ri - 2 * k + mi))
            - GaussScalar::from_rational(rat(
                (ri - 2 * k) * (2 * mi + 2 * ni + ri - 2 * k - 1),
                2,
            ));
        if !(&rec1 * a_k).is_zero() {
            return false;
        }
        // (rec2): 2(k+1)(2n+m+r-2k-2) a_(k+1)
        //  - (i/4)(r-2k)(r-2k-1)(2m+2n+r-2k-1)(2m+2n+r-2k-2) a_k
        let a_next = if ((k + 1) as usize) < coeffs.len() {
            coeffs[(k + 1) as usize].clone()
        } else {
            GaussScalar::zero()
        };
        let lhs = a_next.scale(&rat_int(2 * (k + 1) * (2 * ni + mi + ri - 2 * k - 2)))
            - GaussScalar::i()
                .scale(&rat(
                    (ri - 2 * k) * (ri - 2 * k - 1) * (2 * mi + 2 * ni + ri - 2 * k - 1),
                    4,
                ))
                .scale(&rat_int(2 * mi + 2 * ni + ri - 2 * k - 2))
                * a_k.clone();
        if !lhs.is_zero() {
            return false;
        }
    }
    true
}

/// P_1 = (Ex+Ey)(Ex+Ey+Ez-lambda+n-1/2) - i Xs Ds, in closed form.
pub fn p1_operator(params: &RepParams) -> WeylOp {
    let s = VarSpace::fourier(params.n);
    let (d_s, _, x_s) = build_sl2_ops(s);
    let exy = crate::rep::euler_x(s).add(&crate::rep::euler_y(s));
    let shift = GaussScalar::from_rational(rat_int(params.n as i64) - rat(1, 2))
        - params.lambda.clone();
    let full = exy
        .add(&crate::rep::euler_z(s))
        .add(&WeylOp::constant(s, shift));
    exy.mul(&full)
        .sub(&x_s.mul(&d_s).scale(&GaussScalar::i()))
}

/// P_2 = 2 dz (Ex+Ey+2n) + i Ds^2, in closed form.
pub fn p2_operator(params: &RepParams) -> WeylOp {
    let s = VarSpace::fourier(params.n);
    let (d_s, _, _) = build_sl2_ops(s);
    let exy = crate::rep::euler_x(s)
        .add(&crate::rep::euler_y(s))
        .add(&WeylOp::constant(s, GaussScalar::from_int(2 * params.n as i64)));
    WeylOp::deriv_var(s, crate::weyl::Var::Z)
        .mul(&exy)
        .scale(&GaussScalar::from_int(2))
        .add(&d_s.mul(&d_s).scale(&GaussScalar::i()))
}

/// Which branch of the classification theorem a (theorem-normalized)
/// lambda falls in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ClassificationCase {
    #[serde(rename = "generic_M0_only")]
    GenericM0Only,
    #[serde(rename = "integer_case_T")]
    IntegerCaseT,
    #[serde(rename = "half_integer_case_T")]
    HalfIntegerCaseT,
    #[serde(rename = "half_integer_case_M_and_X")]
    HalfIntegerCaseMAndX,
    #[serde(rename = "n1_full_case")]
    N1FullCase,
}

/// Machine-readable certificate for one classification run. `lambda` is
/// the inducing weight of the theorem; the solver works with the shifted
/// realization parameter `lambda_hat` = lambda + n + 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularReport {
    pub n: usize,
    pub lambda: GaussScalar,
    pub lambda_hat: GaussScalar,
    pub boxes: Vec<(u32, u32)>,
    pub kernel_dims: Vec<usize>,
    pub predicted_dims: Vec<usize>,
    pub found_generators: Vec<String>,
    pub classification_case: ClassificationCase,
    pub theorem_row: u32,
    #[serde(rename = "match")]
    pub matches: bool,
    pub truncated: bool,
}

fn is_nat0(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

/// x in (1/2)N, i.e. 2x in {1, 2, 3, ...}.
fn in_half_nat(r: &Rational) -> bool {
    let twice = r * rat_int(2);
    twice.is_integer() && twice.is_positive()
}

fn case_of(n: usize, lambda: &GaussScalar) -> (ClassificationCase, u32) {
    use ClassificationCase::*;
    if !lambda.is_real() {
        return (GenericM0Only, 1);
    }
    let l = &lambda.re;
    if n == 1 {
        if !in_half_nat(&(l + rat_int(2))) {
            (GenericM0Only, 1)
        } else if is_nat0(&(l + rat_int(1))) {
            (IntegerCaseT, 2)
        } else if *l == rat(-3, 2) {
            (HalfIntegerCaseT, 3)
        } else {
            debug_assert!(is_nat0(&(l + rat(1, 2))));
            (N1FullCase, 4)
        }
    } else if !in_half_nat(&(l + rat_int(n as i64 + 1))) {
        (GenericM0Only, 1)
    } else if is_nat0(&(l + rat_int(n as i64))) {
        (IntegerCaseT, 2)
    } else if !is_nat0(&(l + rat(1, 2))) {
        debug_assert!(is_nat0(&(l + rat_int(n as i64) + rat(1, 2))));
        (HalfIntegerCaseT, 3)
    } else {
        (HalfIntegerCaseMAndX, 4)
    }
}

fn poly_to_row(p: &PolyVec, index: &std::collections::BTreeMap<Exponents, usize>) -> SparseRow {
    p.terms
        .iter()
        .map(|(e, c)| (*index.get(e).expect("vector inside the box"), c.clone()))
        .collect()
}

/// Runs kernel_search on every slice m <= m_max and compares against the
/// theorem branch, both by dimension and by explicit generator
/// membership.
pub fn classify(n: usize, lambda: &GaussScalar, m_max: u32, q_max: u32) -> SingularReport {
    let lambda_hat = lambda.clone() + &GaussScalar::from_int(n as i64 + 1);
    let params = RepParams::new(n, lambda_hat.clone());
    let space = VarSpace::fourier(n);
    let (case, row) = case_of(n, lambda);

    // slice index of the T image and of the exceptional M piece
    let t_order: Option<u32> = if row >= 2 {
        let r2 = &lambda_hat.re * rat_int(2);
        Some(r2.to_integer().try_into().expect("positive T order"))
    } else {
        None
    };
    let m_exc: Option<u32> = if matches!(
        case,
        ClassificationCase::HalfIntegerCaseMAndX | ClassificationCase::N1FullCase
    ) {
        let m = &lambda.re + rat(3, 2);
        Some(m.to_integer().try_into().expect("positive M index"))
    } else {
        None
    };

    // predicted generators per slice
    let mut predicted: Vec<Vec<PolyVec>> = vec![Vec::new(); m_max as usize + 1];
    // M_0 cap box: every monomial q^gamma with |gamma| <= q_max
    for e in slice_basis(space, 0, q_max) {
        predicted[0].push(PolyVec::monomial(space, e, GaussScalar::one()));
    }
    let mut truncated = false;
    if let Some(r) = t_order {
        if r <= m_max && q_max >= r {
            let t = t_operator(n, r);
            for e in slice_basis(space, 0, q_max - r) {
                predicted[r as usize]
                    .push(t.apply(&PolyVec::monomial(space, e, GaussScalar::one())));
            }
        } else {
            truncated = true;
        }
    }
    if let Some(mm) = m_exc {
        if mm <= m_max {
            predicted[mm as usize].extend(mm_basis(n, mm, q_max).basis);
        } else {
            truncated = true;
        }
        if case == ClassificationCase::N1FullCase {
            // X_s M_mm: inside the box these are X_s of harmonics with
            // q-degree at most q_max - 1
            if mm + 1 <= m_max && q_max >= 1 {
                let (_, _, x_s) = build_sl2_ops(space);
                for v in mm_basis(n, mm, q_max - 1).basis {
                    predicted[(mm + 1) as usize].push(x_s.apply(&v));
                }
            } else {
                truncated = true;
            }
        }
    }

    let mut boxes = Vec::new();
    let mut kernel_dims = Vec::new();
    let mut predicted_dims = Vec::new();
    let mut found_generators = Vec::new();
    let mut matches = true;
    for m in 0..=m_max {
        let kernel = kernel_search(&params, m, q_max);
        boxes.push((m, q_max));
        kernel_dims.push(kernel.basis.len());
        predicted_dims.push(predicted[m as usize].len());
        for v in &kernel.basis {
            found_generators.push(format!("m={m}: {v}"));
        }
        // dimension must agree, and every predicted generator must lie in
        // the computed kernel with the predicted set independent
        if kernel.basis.len() != predicted[m as usize].len() {
            matches = false;
            continue;
        }
        let index: std::collections::BTreeMap<Exponents, usize> = slice_basis(space, m, q_max)
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut span = SpanReducer::new();
        for v in &kernel.basis {
            span.add(&poly_to_row(v, &index));
        }
        let mut pred_span = SpanReducer::new();
        for p in &predicted[m as usize] {
            let row = poly_to_row(p, &index);
            if !span.contains(&row) || !pred_span.add(&row) {
                matches = false;
            }
        }
    }

    SingularReport {
        n,
        lambda: lambda.clone(),
        lambda_hat,
        boxes,
        kernel_dims,
        predicted_dims,
        found_generators,
        classification_case: case,
        theorem_row: row,
        matches,
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Var;

    #[test]
    fn lambda_candidates_examples() {
        assert_eq!(lambda_candidates(0, 2, 1), Some(rat_int(1)));
        assert_eq!(lambda_candidates(1, 0, 1), Some(rat(3, 2)));
        assert_eq!(lambda_candidates(0, 0, 5), None);
    }

    #[test]
    fn t_operator_examples() {
        let s = VarSpace::fourier(1);
        let (_, _, x_s) = build_sl2_ops(s);
        assert_eq!(t_operator(1, 1), x_s);
        // n=1, a=2: Xs^2 + (3i/4) z
        let expect = x_s.pow(2).add(
            &WeylOp::mult_var(s, Var::Z).scale(&GaussScalar::i().scale(&rat(3, 4))),
        );
        assert_eq!(t_operator(1, 2), expect);
        // coefficient of z in T^n_2 is i(2n+1)/4
        for n in 1..=3usize {
            let coefs = t_coefficients(n, 2);
            assert_eq!(
                coefs[1],
                GaussScalar::i().scale(&rat(2 * n as i64 + 1, 4))
            );
        }
    }

    #[test]
    fn t_coefficients_satisfy_the_recurrence() {
        for n in 1..=3usize {
            for a in 1..=8u32 {
                assert!(recurrence_verify(n, a, &t_coefficients(n, a)));
            }
        }
        // negative control
        assert!(!recurrence_verify(
            1,
            2,
            &[GaussScalar::one(), GaussScalar::zero()]
        ));
        // r=0 has no constraints
        assert!(recurrence_verify(1, 0, &[GaussScalar::one()]));
    }

    #[test]
    fn t_coefficients_satisfy_the_general_recurrences() {
        // m=0, lambda = r/2 is the case-2 parameter point
        for n in 1..=2usize {
            for r in 1..=6u32 {
                let lambda = GaussScalar::from_rational(rat(r as i64, 2));
                assert!(general_recurrence_verify(
                    n,
                    0,
                    r,
                    &lambda,
                    &t_coefficients(n, r)
                ));
            }
        }
    }

    #[test]
    fn p_operators_match_their_definitions() {
        for n in 1..=2usize {
            let params = RepParams::new(n, GaussScalar::from_ratio(4, 7));
            let s = VarSpace::fourier(n);
            let mut p1_def = WeylOp::zero(s);
            let mut p2_def = WeylOp::zero(s);
            for j in 0..n {
                let d = pi_hat(&params, BasisTag::D(j));
                let e = pi_hat(&params, BasisTag::E(j));
                p1_def = p1_def.add(&WeylOp::mult_var(s, Var::X(j)).mul(&d));
                p1_def = p1_def.add(&WeylOp::mult_var(s, Var::Y(j)).mul(&e));
                p2_def = p2_def.add(&WeylOp::deriv_var(s, Var::X(j)).mul(&e));
                p2_def = p2_def.sub(&WeylOp::deriv_var(s, Var::Y(j)).mul(&d));
            }
            assert_eq!(p1_operator(&params), p1_def);
            assert_eq!(p2_operator(&params), p2_def);
        }
    }

    #[test]
    fn generic_lambda_kernel_is_m0_only() {
        let params = RepParams::new(1, GaussScalar::from_ratio(1, 3));
        let k0 = kernel_search(&params, 0, 3);
        assert_eq!(k0.basis.len(), 4);
        let k1 = kernel_search(&params, 1, 3);
        assert_eq!(k1.basis.len(), 0);
    }

    #[test]
    fn case3_slice_contains_harmonics() {
        // lambda_hat = m + n - 1/2 with m=1, n=1: x1 is singular
        let params = RepParams::new(1, GaussScalar::from_ratio(3, 2));
        let k = kernel_search(&params, 1, 2);
        let x1 = PolyVec::var(VarSpace::fourier(1), Var::X(0));
        for i in 0..1 {
            assert!(pi_hat(&params, BasisTag::D(i)).apply(&x1).is_zero());
            assert!(pi_hat(&params, BasisTag::E(i)).apply(&x1).is_zero());
        }
        assert!(!k.basis.is_empty());
    }

    #[test]
    fn classify_generic_case() {
        let report = classify(1, &GaussScalar::from_ratio(1, 7), 3, 2);
        assert_eq!(report.classification_case, ClassificationCase::GenericM0Only);
        assert!(report.matches);
        assert!(!report.truncated);
    }

    #[test]
    fn classify_n1_full_case() {
        // lambda = 1/2: n=1 row 4, M_2 and Xs M_2 present
        let report = classify(1, &GaussScalar::from_ratio(1, 2), 5, 3);
        assert_eq!(report.classification_case, ClassificationCase::N1FullCase);
        assert_eq!(report.theorem_row, 4);
        assert!(report.matches, "report: {report:?}");
    }

    #[test]
    fn classify_integer_case() {
        // n=1, lambda = 0: row 2, T of order 2(0+2) = 4
        let report = classify(1, &GaussScalar::zero(), 5, 4);
        assert_eq!(report.classification_case, ClassificationCase::IntegerCaseT);
        assert!(report.matches, "report: {report:?}");
    }
}
