//! The Verma-module side: the elements Q_s and P_s, the homomorphism
//! data phi_0 assembled through the symmetrization beta, and the
//! evaluation map tau_phi tying U(ubar) (x) End S to C[ubar*] (x) S.
//!
//! Sign convention. tau_phi evaluates a PBW word through pi_hat acting
//! on the vacuum and then flips the sign of every monomial of odd
//! xy-degree. This parity twist is the finite-dimensional content of the
//! identification of ubar with its dual inside tau: with it, the anchor
//!     tau_phi(c^m beta(Q_s^k) v) = (-1)^m z^m X_s^k v
//! holds exactly as printed, beta_qs_expand reproduces the four printed
//! normal forms, and phi0_build satisfies the defining commuting square
//! tau_phi(phi_0(v)) = T^n_a v for every a.

use crate::liealg::{symmetrize_beta, BasisTag, UbarElem, UbarGen};
use crate::rep::{pi_hat, RepParams};
use crate::scalar::{rat, rat_int, GaussScalar};
use crate::singular::t_coefficients;
use crate::weyl::{PolyVec, VarSpace, WeylOp};

/// Q_s = -sum_j (i f_j q_j + g_j dq_j) in S(ubar) (x) End S, and
/// P_s = +sum_j (i f_j q_j + g_j dq_j) in U(ubar) (x) End S.
pub fn qs_ps_elems(n: usize) -> (UbarElem, UbarElem) {
    let mut ps = UbarElem::zero(n);
    for j in 0..n {
        ps = ps.add(
            &UbarElem::generator(n, UbarGen::F(j))
                .mul(&UbarElem::generator(n, UbarGen::Q(j)))
                .scale(&GaussScalar::i()),
        );
        ps = ps.add(
            &UbarElem::generator(n, UbarGen::G(j)).mul(&UbarElem::generator(n, UbarGen::Dq(j))),
        );
    }
    (ps.scale(&-GaussScalar::one()), ps)
}

/// (beta (x) id)(Q_s^k) in PBW normal form, in the normalization in which
/// the ubar <-> ubar* identification sign is absorbed (so the k = 1..4
/// values are the printed ones: P_s, P_s^2 - (i/2)nc, ...). Concretely
/// this is the symmetrization of the k-th symmetric power of P_s.
pub fn beta_qs_expand(n: usize, k: usize) -> UbarElem {
    let (_, ps) = qs_ps_elems(n);
    symmetrize_beta(&ps.sym_pow(k))
}

/// The p-homomorphism datum phi_0 of the standard Verma homomorphism of
/// order a, together with the inducing weights of target and source.
#[derive(Clone, Debug)]
pub struct VermaHom {
    pub n: usize,
    pub a: u32,
    pub element: UbarElem,
    pub lambda: GaussScalar,
    pub mu: GaussScalar,
}

/// phi_0 = sum_k (-1)^k a_k c^k (beta (x) id)(Q_s^(a-2k)) with a_k the
/// T-operator coefficients.
pub fn phi0_build(n: usize, a: u32) -> VermaHom {
    assert!(a >= 1);
    let coefs = t_coefficients(n, a);
    let c = UbarElem::generator(n, UbarGen::C);
    let mut element = UbarElem::zero(n);
    for (k, a_k) in coefs.iter().enumerate() {
        let mut sign = a_k.clone();
        if k % 2 == 1 {
            sign = -sign;
        }
        element = element.add(
            &c.pow(k)
                .mul(&beta_qs_expand(n, a as usize - 2 * k))
                .scale(&sign),
        );
    }
    let half_a = rat(a as i64, 2);
    VermaHom {
        n,
        a,
        element,
        lambda: GaussScalar::from_rational(&half_a - rat_int(n as i64 + 1)),
        mu: GaussScalar::from_rational(-(&half_a + rat_int(n as i64 + 1))),
    }
}

fn parity_flip(v: PolyVec) -> PolyVec {
    let mut out = PolyVec::zero(v.space);
    for (e, c) in v.terms {
        let c = if e.xy_degree() % 2 == 1 { -c } else { c };
        out = out.add(&PolyVec::monomial(v.space, e, c));
    }
    out
}

/// Evaluates u (x) v through the realization: the End S factor acts on
/// v in C[q] first, then the PBW word maps through pi_hat (f's outermost,
/// then g's, then c's), and finally the parity twist is applied.
pub fn tau_phi_apply(params: &RepParams, u: &UbarElem, v: &PolyVec) -> PolyVec {
    assert_eq!(u.n, params.n);
    let space = VarSpace::fourier(params.n);
    for e in v.terms.keys() {
        assert!(
            e.x.iter().all(|&d| d == 0) && e.y.iter().all(|&d| d == 0) && e.z == 0,
            "tau_phi vacuum vector must depend on q only"
        );
    }
    let f_ops: Vec<WeylOp> = (0..params.n).map(|j| pi_hat(params, BasisTag::F(j))).collect();
    let g_ops: Vec<WeylOp> = (0..params.n).map(|j| pi_hat(params, BasisTag::G(j))).collect();
    let c_op = pi_hat(params, BasisTag::C);
    let mut out = PolyVec::zero(space);
    for (mono, coef) in &u.terms {
        let mut op = WeylOp::identity(space);
        for (j, &e) in mono.f.iter().enumerate() {
            op = op.mul(&f_ops[j].pow(e as usize));
        }
        for (j, &e) in mono.g.iter().enumerate() {
            op = op.mul(&g_ops[j].pow(e as usize));
        }
        op = op.mul(&c_op.pow(mono.c as usize));
        for (j, &e) in mono.q.iter().enumerate() {
            op = op.mul(&WeylOp::mult_var(space, crate::weyl::Var::Q(j)).pow(e as usize));
        }
        for (j, &e) in mono.dq.iter().enumerate() {
            op = op.mul(&WeylOp::deriv_var(space, crate::weyl::Var::Q(j)).pow(e as usize));
        }
        out = out.add(&op.apply(v).scale(coef));
    }
    parity_flip(out)
}

/// Applies the End S factor of every monomial of `u` to a polynomial
/// v in C[q], returning the element u(v) of U(ubar) (x) C[q] (all dq
/// exponents consumed).
pub fn end_s_apply(u: &UbarElem, v: &PolyVec) -> UbarElem {
    let n = u.n;
    let mut out = UbarElem::zero(n);
    for (mono, coef) in &u.terms {
        for (e, c) in &v.terms {
            assert!(
                e.x.iter().all(|&d| d == 0) && e.y.iter().all(|&d| d == 0) && e.z == 0,
                "end_s_apply vector must depend on q only"
            );
            let mut factor = GaussScalar::one();
            let mut q = mono.q.clone();
            let mut vanished = false;
            for j in 0..n {
                let deg = e.q[j];
                let der = mono.dq[j];
                if der > deg {
                    vanished = true;
                    break;
                }
                for t in 0..der {
                    factor = factor.scale(&rat_int((deg - t) as i64));
                }
                q[j] += deg - der;
            }
            if vanished {
                continue;
            }
            let mut m = mono.clone();
            m.q = q;
            m.dq = vec![0; n];
            let mut val = coef * c;
            val *= &factor;
            let mut term = UbarElem::zero(n);
            term.terms.insert(m, val);
            out = out.add(&term);
        }
    }
    out
}

/// Inverts tau_phi on one homogeneity slice by z-degree triangularity:
/// the image of f^al g^be c^k (x) q^ga is (-1)^k x^al y^be z^k q^ga plus
/// terms of strictly higher z-degree, so peeling lowest-z monomials
/// terminates within the (finite) slice.
pub fn inv_tau_phi(params: &RepParams, target: &PolyVec, m: u32) -> UbarElem {
    let n = params.n;
    assert_eq!(
        target.homogeneity(),
        if target.is_zero() { None } else { Some(m) },
        "inv_tau_phi target must be homogeneous of the stated weight"
    );
    let mut rest = target.clone();
    let mut out = UbarElem::zero(n);
    while !rest.is_zero() {
        let (e, c) = rest
            .terms
            .iter()
            .min_by_key(|(e, _)| (e.z, (*e).clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero polynomial has a term");
        let mut elem = UbarElem::identity(n);
        for j in 0..n {
            elem = elem.mul(&UbarElem::generator(n, UbarGen::F(j)).pow(e.x[j] as usize));
        }
        for j in 0..n {
            elem = elem.mul(&UbarElem::generator(n, UbarGen::G(j)).pow(e.y[j] as usize));
        }
        elem = elem.mul(&UbarElem::generator(n, UbarGen::C).pow(e.z as usize));
        for j in 0..n {
            elem = elem.mul(&UbarElem::generator(n, UbarGen::Q(j)).pow(e.q[j] as usize));
        }
        let mut coef = c;
        if e.z % 2 == 1 {
            coef = -coef;
        }
        let elem = elem.scale(&coef);
        rest = rest.sub(&tau_phi_apply(params, &elem, &PolyVec::one(VarSpace::fourier(n))));
        out = out.add(&elem);
    }
    out
}
