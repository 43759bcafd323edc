//! Operator realizations of sp(2n+2) on polynomial-valued symplectic
//! spinors: the Fourier picture embedding pi_hat (with the
//! Segal-Shale-Weil action baked in) and the geometric picture pi_geom
//! with a pluggable inducing action sigma, plus the homomorphism verifier.

use crate::fischer::build_sl2_ops;
use crate::liealg::{bracket_matrix, full_basis, BasisTag};
use crate::scalar::{rat_int, GaussScalar};
use crate::weyl::{Var, VarSpace, WeylOp};

/// The scalar part of a realization: symplectic rank and the twist
/// lambda, understood as the subscript of pi_hat / pi_geom (the scalar of
/// lambda times the fundamental weight).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepParams {
    pub n: usize,
    pub lambda: GaussScalar,
}

impl RepParams {
    pub fn new(n: usize, lambda: GaussScalar) -> Self {
        assert!(n >= 1);
        RepParams { n, lambda }
    }

    /// rho = (n+1) on the fundamental-weight line.
    pub fn rho(&self) -> GaussScalar {
        GaussScalar::from_int(self.n as i64 + 1)
    }
}

/// Inducing actions on the spinor factor C[q].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SigmaModel {
    /// Segal-Shale-Weil (Fock) action.
    Ssw,
    /// Contragredient action through the integral pairing.
    SswDual,
    /// The 1-dimensional degenerate case: all of l^s acts by zero.
    TrivialCharacter,
}

impl SigmaModel {
    /// sigma(h): the center of the Levi acts trivially in every model.
    pub fn h(&self, space: VarSpace) -> WeylOp {
        WeylOp::zero(space)
    }

    /// sigma(h_{E_ij,0,0}) = -q_j dq_i - (1/2) delta_ij (both SSW models).
    pub fn ha(&self, space: VarSpace, i: usize, j: usize) -> WeylOp {
        match self {
            SigmaModel::TrivialCharacter => WeylOp::zero(space),
            SigmaModel::Ssw | SigmaModel::SswDual => {
                let mut op = WeylOp::mult_var(space, Var::Q(j))
                    .mul(&WeylOp::deriv_var(space, Var::Q(i)))
                    .neg();
                if i == j {
                    op = op.add(&WeylOp::constant(space, GaussScalar::from_ratio(-1, 2)));
                }
                op
            }
        }
    }

    /// sigma(h_{0,E_ij+E_ji,0}) = +-i dq_i dq_j.
    pub fn hb(&self, space: VarSpace, i: usize, j: usize) -> WeylOp {
        let sign = match self {
            SigmaModel::Ssw => GaussScalar::i(),
            SigmaModel::SswDual => -GaussScalar::i(),
            SigmaModel::TrivialCharacter => return WeylOp::zero(space),
        };
        WeylOp::deriv_var(space, Var::Q(i))
            .mul(&WeylOp::deriv_var(space, Var::Q(j)))
            .scale(&sign)
    }

    /// sigma(h_{0,0,E_ij+E_ji}) = +-i q_i q_j.
    pub fn hc(&self, space: VarSpace, i: usize, j: usize) -> WeylOp {
        let sign = match self {
            SigmaModel::Ssw => GaussScalar::i(),
            SigmaModel::SswDual => -GaussScalar::i(),
            SigmaModel::TrivialCharacter => return WeylOp::zero(space),
        };
        WeylOp::mult_var(space, Var::Q(i))
            .mul(&WeylOp::mult_var(space, Var::Q(j)))
            .scale(&sign)
    }
}

fn mv(space: VarSpace, v: Var) -> WeylOp {
    WeylOp::mult_var(space, v)
}

fn dv(space: VarSpace, v: Var) -> WeylOp {
    WeylOp::deriv_var(space, v)
}

/// Euler operator of the x family.
pub fn euler_x(space: VarSpace) -> WeylOp {
    (0..space.n).fold(WeylOp::zero(space), |acc, j| {
        acc.add(&mv(space, Var::X(j)).mul(&dv(space, Var::X(j))))
    })
}

pub fn euler_y(space: VarSpace) -> WeylOp {
    (0..space.n).fold(WeylOp::zero(space), |acc, j| {
        acc.add(&mv(space, Var::Y(j)).mul(&dv(space, Var::Y(j))))
    })
}

pub fn euler_z(space: VarSpace) -> WeylOp {
    mv(space, Var::Z).mul(&dv(space, Var::Z))
}

/// The Fourier-picture embedding pi_hat_lambda, specialized to the
/// Segal-Shale-Weil inducing action as printed.
pub fn pi_hat(params: &RepParams, tag: BasisTag) -> WeylOp {
    let s = VarSpace::fourier(params.n);
    let n = params.n as i64;
    let lambda = &params.lambda;
    let half = GaussScalar::from_ratio(1, 2);
    let (d_s, _e, _x_s) = build_sl2_ops(s);
    // E_x + E_y + E_z - lambda + n - 1/2, the common scalar-shifted Euler
    let euler_shift = |shift: GaussScalar| {
        euler_x(s)
            .add(&euler_y(s))
            .add(&euler_z(s))
            .add(&WeylOp::constant(s, shift))
    };
    match tag {
        BasisTag::F(i) => mv(s, Var::X(i))
            .neg()
            .sub(&mv(s, Var::Z).mul(&dv(s, Var::Y(i))).scale(&half)),
        BasisTag::G(i) => mv(s, Var::Y(i))
            .neg()
            .add(&mv(s, Var::Z).mul(&dv(s, Var::X(i))).scale(&half)),
        BasisTag::C => mv(s, Var::Z).neg(),
        BasisTag::H => euler_x(s)
            .add(&euler_y(s))
            .add(&euler_z(s).scale(&GaussScalar::from_int(2)))
            .neg()
            .add(&WeylOp::constant(
                s,
                lambda.clone() - GaussScalar::from_int(n + 1),
            )),
        BasisTag::Ha(i, j) => mv(s, Var::X(i))
            .mul(&dv(s, Var::X(j)))
            .sub(&mv(s, Var::Y(j)).mul(&dv(s, Var::Y(i))))
            .add(&SigmaModel::Ssw.ha(s, i, j)),
        BasisTag::Hb(i, j) => {
            let mut op = mv(s, Var::X(i)).mul(&dv(s, Var::Y(j)));
            op = op.add(&mv(s, Var::X(j)).mul(&dv(s, Var::Y(i))));
            op.add(&SigmaModel::Ssw.hb(s, i, j))
        }
        BasisTag::Hc(i, j) => {
            let mut op = mv(s, Var::Y(i)).mul(&dv(s, Var::X(j)));
            op = op.add(&mv(s, Var::Y(j)).mul(&dv(s, Var::X(i))));
            op.add(&SigmaModel::Ssw.hc(s, i, j))
        }
        BasisTag::D(i) => {
            let shift = GaussScalar::from_rational(rat_int(n) - crate::scalar::rat(1, 2))
                - lambda.clone();
            mv(s, Var::Y(i))
                .mul(&dv(s, Var::Z))
                .scale(&GaussScalar::from_int(-2))
                .add(&dv(s, Var::X(i)).mul(&euler_shift(shift)))
                .add(&mv(s, Var::Q(i)).mul(&d_s))
        }
        BasisTag::E(i) => {
            let shift = GaussScalar::from_rational(rat_int(n) - crate::scalar::rat(1, 2))
                - lambda.clone();
            mv(s, Var::X(i))
                .mul(&dv(s, Var::Z))
                .scale(&GaussScalar::from_int(2))
                .add(&dv(s, Var::Y(i)).mul(&euler_shift(shift)))
                .sub(&dv(s, Var::Q(i)).mul(&d_s).scale(&GaussScalar::i()))
        }
        BasisTag::A => {
            let shift = GaussScalar::from_int(n) - lambda.clone();
            dv(s, Var::Z)
                .mul(&euler_shift(shift))
                .scale(&GaussScalar::from_int(4))
                .add(&d_s.mul(&d_s).scale(&GaussScalar::i()))
        }
    }
}

/// sigma_{lambda+rho} evaluated on a Levi generator: the character part
/// contributes only on h, where it equals lambda + n + 1.
fn sigma_twisted_h(params: &RepParams, sigma: SigmaModel, space: VarSpace) -> WeylOp {
    sigma.h(space).add(&WeylOp::constant(
        space,
        params.lambda.clone() + &params.rho(),
    ))
}

/// The geometric-picture embedding pi_lambda for a pluggable sigma,
/// following the general realization theorem verbatim.
pub fn pi_geom(params: &RepParams, sigma: SigmaModel, tag: BasisTag) -> WeylOp {
    let s = VarSpace::geometric(params.n);
    let n = params.n;
    let half = GaussScalar::from_ratio(1, 2);
    let two = GaussScalar::from_int(2);
    let euler3 = euler_x(s).add(&euler_y(s)).add(&euler_z(s));
    match tag {
        BasisTag::F(i) => dv(s, Var::X(i))
            .neg()
            .add(&mv(s, Var::Y(i)).mul(&dv(s, Var::Z)).scale(&half)),
        BasisTag::G(i) => dv(s, Var::Y(i))
            .neg()
            .sub(&mv(s, Var::X(i)).mul(&dv(s, Var::Z)).scale(&half)),
        BasisTag::C => dv(s, Var::Z).neg(),
        BasisTag::H => euler_x(s)
            .add(&euler_y(s))
            .add(&euler_z(s).scale(&two))
            .add(&sigma_twisted_h(params, sigma, s)),
        BasisTag::Ha(i, j) => mv(s, Var::X(j))
            .mul(&dv(s, Var::X(i)))
            .sub(&mv(s, Var::Y(i)).mul(&dv(s, Var::Y(j))))
            .neg()
            .add(&sigma.ha(s, i, j)),
        BasisTag::Hb(i, j) => mv(s, Var::Y(j))
            .mul(&dv(s, Var::X(i)))
            .add(&mv(s, Var::Y(i)).mul(&dv(s, Var::X(j))))
            .neg()
            .add(&sigma.hb(s, i, j)),
        BasisTag::Hc(i, j) => mv(s, Var::X(j))
            .mul(&dv(s, Var::Y(i)))
            .add(&mv(s, Var::X(i)).mul(&dv(s, Var::Y(j))))
            .neg()
            .add(&sigma.hc(s, i, j)),
        BasisTag::D(i) => {
            let mut op = mv(s, Var::Z).mul(&dv(s, Var::Y(i))).scale(&two);
            op = op.add(&mv(s, Var::X(i)).mul(&euler3));
            op = op.add(&mv(s, Var::X(i)).mul(&sigma_twisted_h(params, sigma, s)));
            for j in 0..n {
                op = op.sub(&mv(s, Var::X(j)).mul(&sigma.ha(s, j, i)));
                op = op.sub(&mv(s, Var::Y(j)).mul(&sigma.hc(s, i, j)));
            }
            op
        }
        BasisTag::E(i) => {
            let mut op = mv(s, Var::Z)
                .mul(&dv(s, Var::X(i)))
                .scale(&-two.clone());
            op = op.add(&mv(s, Var::Y(i)).mul(&euler3));
            op = op.add(&mv(s, Var::Y(i)).mul(&sigma_twisted_h(params, sigma, s)));
            for j in 0..n {
                op = op.add(&mv(s, Var::Y(j)).mul(&sigma.ha(s, i, j)));
                op = op.sub(&mv(s, Var::X(j)).mul(&sigma.hb(s, i, j)));
            }
            op
        }
        BasisTag::A => {
            let four = GaussScalar::from_int(4);
            let mut op = mv(s, Var::Z).mul(&euler3).scale(&four);
            op = op.add(
                &mv(s, Var::Z)
                    .mul(&sigma_twisted_h(params, sigma, s))
                    .scale(&four),
            );
            for i in 0..n {
                for j in 0..n {
                    op = op.sub(
                        &mv(s, Var::X(i))
                            .mul(&mv(s, Var::Y(j)))
                            .mul(&sigma.ha(s, i, j))
                            .scale(&two),
                    );
                    op = op.add(
                        &mv(s, Var::X(i))
                            .mul(&mv(s, Var::X(j)))
                            .mul(&sigma.hb(s, i, j)),
                    );
                    op = op.sub(
                        &mv(s, Var::Y(i))
                            .mul(&mv(s, Var::Y(j)))
                            .mul(&sigma.hc(s, i, j)),
                    );
                }
            }
            op
        }
    }
}

/// The contragredient realization pi*_lambda used by the equivariant
/// differential operators.
pub fn pi_dual(params: &RepParams, tag: BasisTag) -> WeylOp {
    pi_geom(params, SigmaModel::SswDual, tag)
}

/// Nonzero defects [rep(X), rep(Y)] - rep([X, Y]) over all basis pairs.
pub fn check_homomorphism<F>(rep: F, n: usize) -> Vec<((BasisTag, BasisTag), WeylOp)>
where
    F: Fn(BasisTag) -> WeylOp,
{
    let basis = full_basis(n);
    let images: Vec<WeylOp> = basis.iter().map(|b| rep(b.tag)).collect();
    let mut defects = Vec::new();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let mut expected = WeylOp::zero(images[i].space);
            for (tag, coef) in bracket_matrix(x, y).expect("basis bracket closes") {
                expected = expected.add(&rep(tag).scale(&coef));
            }
            let defect = images[i].commutator(&images[j]).sub(&expected);
            if !defect.is_zero() {
                defects.push(((x.tag, y.tag), defect));
            }
        }
    }
    defects
}
