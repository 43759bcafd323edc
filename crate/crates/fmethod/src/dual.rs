//! The dual (geometric) side: mapping Verma-homomorphism data to
//! equivariant differential operators in the hat picture, the printed
//! operators D_1..D_4, the conjectural factorization, and exact
//! intertwining certificates.

use crate::liealg::{BasisTag, UbarElem};
use crate::rep::{pi_dual, RepParams};
use crate::scalar::{rat, GaussScalar};
use crate::verma::inv_tau_phi;
use crate::weyl::{Var, VarSpace, WeylOp};

/// Image of f_j under dualization: d/dxh_j + (1/2) yh_j d/dzh.
fn f_image(space: VarSpace, j: usize) -> WeylOp {
    WeylOp::deriv_var(space, Var::X(j)).add(
        &WeylOp::mult_var(space, Var::Y(j))
            .mul(&WeylOp::deriv_var(space, Var::Z))
            .scale(&GaussScalar::from_ratio(1, 2)),
    )
}

/// Image of g_j under dualization: d/dyh_j - (1/2) xh_j d/dzh.
fn g_image(space: VarSpace, j: usize) -> WeylOp {
    WeylOp::deriv_var(space, Var::Y(j)).sub(
        &WeylOp::mult_var(space, Var::X(j))
            .mul(&WeylOp::deriv_var(space, Var::Z))
            .scale(&GaussScalar::from_ratio(1, 2)),
    )
}

/// (D_shat, X_shat) in the geometric picture.
pub fn d_hat_ops(n: usize) -> (WeylOp, WeylOp) {
    let space = VarSpace::geometric(n);
    let mut d = WeylOp::zero(space);
    let mut x = WeylOp::zero(space);
    for j in 0..n {
        d = d.add(
            &WeylOp::mult_var(space, Var::Q(j))
                .mul(&WeylOp::deriv_var(space, Var::X(j)))
                .scale(&GaussScalar::i()),
        );
        d = d.sub(
            &WeylOp::deriv_var(space, Var::Y(j)).mul(&WeylOp::deriv_var(space, Var::Q(j))),
        );
        x = x.add(
            &WeylOp::mult_var(space, Var::Y(j))
                .mul(&WeylOp::mult_var(space, Var::Q(j)))
                .scale(&GaussScalar::i()),
        );
        x = x.add(
            &WeylOp::mult_var(space, Var::X(j)).mul(&WeylOp::deriv_var(space, Var::Q(j))),
        );
    }
    (d, x)
}

/// B = D_shat + (1/2) X_shat d/dzh, the first-order building block of
/// every D_a.
pub fn b_operator(n: usize) -> WeylOp {
    let space = VarSpace::geometric(n);
    let (d, x) = d_hat_ops(n);
    d.add(
        &x.mul(&WeylOp::deriv_var(space, Var::Z))
            .scale(&GaussScalar::from_ratio(1, 2)),
    )
}

/// Maps PBW words to the geometric picture: f_j, g_j, c go to the
/// right-invariant images above and d/dzh, and the End S factor is
/// dualized through the integral pairing, which sends q_j -> q_j and
/// dq_j -> -dq_j and transposes the composition order (derivatives act
/// before multiplications). The ubar images commute with the End S
/// images, so a word f^al g^be c^k q^ga dq^de maps to
/// Fh^al Gh^be dzh^k (-dq)^de q^ga.
pub fn dualize(u: &UbarElem) -> WeylOp {
    let n = u.n;
    let space = VarSpace::geometric(n);
    let dz = WeylOp::deriv_var(space, Var::Z);
    let mut out = WeylOp::zero(space);
    for (mono, coef) in &u.terms {
        let mut op = WeylOp::identity(space);
        for (j, &e) in mono.f.iter().enumerate() {
            op = op.mul(&f_image(space, j).pow(e as usize));
        }
        for (j, &e) in mono.g.iter().enumerate() {
            op = op.mul(&g_image(space, j).pow(e as usize));
        }
        op = op.mul(&dz.pow(mono.c as usize));
        for (j, &e) in mono.dq.iter().enumerate() {
            let der = WeylOp::deriv_var(space, Var::Q(j)).scale(&-GaussScalar::one());
            op = op.mul(&der.pow(e as usize));
        }
        for (j, &e) in mono.q.iter().enumerate() {
            op = op.mul(&WeylOp::mult_var(space, Var::Q(j)).pow(e as usize));
        }
        out = out.add(&op.scale(coef));
    }
    out
}

/// An equivariant operator with the weights of its source and target
/// principal-series realizations.
#[derive(Clone, Debug)]
pub struct EquivariantOp {
    pub n: usize,
    pub a: u32,
    pub op: WeylOp,
    pub source_lambda: GaussScalar,
    pub target_lambda: GaussScalar,
}

fn equivariant(n: usize, a: u32, op: WeylOp) -> EquivariantOp {
    EquivariantOp {
        n,
        a,
        op,
        source_lambda: GaussScalar::from_rational(-rat(a as i64, 2)),
        target_lambda: GaussScalar::from_rational(rat(a as i64, 2)),
    }
}

/// The printed operators D_1..D_4.
pub fn explicit_da(n: usize, a: u32) -> EquivariantOp {
    assert!((1..=4).contains(&a), "printed forms exist for a = 1..4");
    let space = VarSpace::geometric(n);
    let b = b_operator(n);
    let dz = WeylOp::deriv_var(space, Var::Z);
    let b2 = b.mul(&b);
    let op = match a {
        1 => b,
        // B^2 - (i/4) dzh
        2 => b2.sub(&dz.scale(&GaussScalar::i().scale(&rat(1, 4)))),
        // B (B^2 - i dzh)
        3 => b.mul(&b2.sub(&dz.scale(&GaussScalar::i()))),
        // (B^2 - (i/4) dzh)(B^2 - (9i/4) dzh)
        4 => b2
            .sub(&dz.scale(&GaussScalar::i().scale(&rat(1, 4))))
            .mul(&b2.sub(&dz.scale(&GaussScalar::i().scale(&rat(9, 4))))),
        _ => unreachable!(),
    };
    equivariant(n, a, op)
}

/// The conjectural factorized form of D_a for arbitrary order.
pub fn factorized_da(n: usize, a: u32) -> WeylOp {
    assert!(a >= 1);
    let space = VarSpace::geometric(n);
    let b = b_operator(n);
    let dz = WeylOp::deriv_var(space, Var::Z);
    let b2 = b.mul(&b);
    if a % 2 == 0 {
        // a = 2k+2: prod_{j=0..k} (B^2 - i (2j+1)^2/4 dzh)
        let k = (a - 2) / 2;
        let mut out = WeylOp::identity(space);
        for j in 0..=k {
            let c = rat(((2 * j + 1) * (2 * j + 1)) as i64, 4);
            out = out.mul(&b2.sub(&dz.scale(&GaussScalar::i().scale(&c))));
        }
        out
    } else {
        // a = 2k+1: B prod_{j=1..k} (B^2 - i j^2 dzh)
        let k = (a - 1) / 2;
        let mut out = b;
        for j in 1..=k {
            let c = rat((j * j) as i64, 1);
            out = out.mul(&b2.sub(&dz.scale(&GaussScalar::i().scale(&c))));
        }
        out
    }
}

/// D pi*_{-a/2}(X) - pi*_{a/2}(X) D in normal form; the zero map
/// certifies equivariance for X.
pub fn intertwine_defect(n: usize, a: u32, d: &WeylOp, tag: BasisTag) -> WeylOp {
    let minus = RepParams::new(n, GaussScalar::from_rational(-rat(a as i64, 2)));
    let plus = RepParams::new(n, GaussScalar::from_rational(rat(a as i64, 2)));
    d.mul(&pi_dual(&minus, tag)).sub(&pi_dual(&plus, tag).mul(d))
}

/// Components of the twistor operator: for each basis vector w of an
/// M_m harmonic slice at lambda = m + n - 1/2, the geometric-picture
/// operator dualize(inv_tau_phi(w)).
pub fn twistor_components(
    params: &RepParams,
    w_slice: &crate::fischer::HarmonicSlice,
) -> Vec<WeylOp> {
    let expected = GaussScalar::from_rational(
        rat(w_slice.m as i64, 1) + rat(params.n as i64, 1) - rat(1, 2),
    );
    assert_eq!(
        params.lambda, expected,
        "twistor components require lambda = m + n - 1/2"
    );
    w_slice
        .basis
        .iter()
        .map(|w| dualize(&inv_tau_phi(params, w, w_slice.m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::full_basis;
    use crate::verma::{phi0_build, qs_ps_elems};

    #[test]
    fn dualize_ps_is_d1() {
        for n in 1..=3usize {
            let (_, ps) = qs_ps_elems(n);
            assert_eq!(dualize(&ps), b_operator(n));
            assert_eq!(explicit_da(n, 1).op, b_operator(n));
        }
    }

    #[test]
    fn dual_images_satisfy_heisenberg_relations() {
        let space = VarSpace::geometric(2);
        let dz = WeylOp::deriv_var(space, Var::Z);
        for i in 0..2 {
            for j in 0..2 {
                let comm = f_image(space, i).commutator(&g_image(space, j));
                if i == j {
                    assert_eq!(comm, dz.scale(&-GaussScalar::one()));
                } else {
                    assert!(comm.is_zero());
                }
            }
        }
    }

    #[test]
    fn factorized_matches_explicit() {
        for n in 1..=2usize {
            for a in 1..=4u32 {
                assert_eq!(factorized_da(n, a), explicit_da(n, a).op, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn d1_intertwines_n1() {
        for be in full_basis(1) {
            let defect = intertwine_defect(1, 1, &explicit_da(1, 1).op, be.tag);
            assert!(defect.is_zero(), "defect for {}: {defect}", be.tag);
        }
    }

    #[test]
    fn d2_intertwines_n1() {
        for be in full_basis(1) {
            let defect = intertwine_defect(1, 2, &explicit_da(1, 2).op, be.tag);
            assert!(defect.is_zero(), "defect for {}: {defect}", be.tag);
        }
    }

    #[test]
    fn bare_d_hat_fails_to_intertwine() {
        let (d_hat, _) = d_hat_ops(1);
        let defect = intertwine_defect(1, 1, &d_hat, BasisTag::D(0));
        assert!(!defect.is_zero());
    }

    #[test]
    fn dualize_phi0_matches_explicit_da() {
        for n in 1..=2usize {
            for a in 1..=4u32 {
                assert_eq!(
                    dualize(&phi0_build(n, a).element),
                    explicit_da(n, a).op,
                    "n={n} a={a}"
                );
            }
        }
    }

    #[test]
    fn dualize_is_algebra_map_on_ubar_words() {
        use crate::liealg::{UbarElem, UbarGen};
        let n = 2;
        let f0 = UbarElem::generator(n, UbarGen::F(0));
        let g0 = UbarElem::generator(n, UbarGen::G(0));
        let g1 = UbarElem::generator(n, UbarGen::G(1));
        let c = UbarElem::generator(n, UbarGen::C);
        let u = f0.mul(&f0).add(&g1.scale(&GaussScalar::i()));
        let v = g0.mul(&c).sub(&f0);
        assert_eq!(dualize(&u.mul(&v)), dualize(&u).mul(&dualize(&v)));
    }
}
