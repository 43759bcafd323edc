//! The sl(2)-triple (D_s, E+n, X_s), the harmonic spaces M_m, and the
//! ladder (Fischer/Howe) decomposition of polynomial-valued spinors.

use crate::linalg::{nullspace, SparseRow};
use crate::scalar::{rat, GaussScalar, Rational};
use crate::weyl::{Exponents, PolyVec, Var, VarSpace, WeylOp};

/// D_s = sum(i q_j dy_j - dx_j dq_j), E = sum(x_j dx_j + y_j dy_j),
/// X_s = sum(i x_j q_j + y_j dq_j), realized in the given variable space.
pub fn build_sl2_ops(space: VarSpace) -> (WeylOp, WeylOp, WeylOp) {
    let n = space.n;
    let mut d_s = WeylOp::zero(space);
    let mut e = WeylOp::zero(space);
    let mut x_s = WeylOp::zero(space);
    let i = GaussScalar::i();
    for j in 0..n {
        d_s = d_s.add(
            &WeylOp::mult_var(space, Var::Q(j))
                .mul(&WeylOp::deriv_var(space, Var::Y(j)))
                .scale(&i),
        );
        d_s = d_s.sub(
            &WeylOp::deriv_var(space, Var::X(j)).mul(&WeylOp::deriv_var(space, Var::Q(j))),
        );
        e = e.add(&WeylOp::mult_var(space, Var::X(j)).mul(&WeylOp::deriv_var(space, Var::X(j))));
        e = e.add(&WeylOp::mult_var(space, Var::Y(j)).mul(&WeylOp::deriv_var(space, Var::Y(j))));
        x_s = x_s.add(
            &WeylOp::mult_var(space, Var::X(j))
                .mul(&WeylOp::mult_var(space, Var::Q(j)))
                .scale(&i),
        );
        x_s = x_s.add(
            &WeylOp::mult_var(space, Var::Y(j)).mul(&WeylOp::deriv_var(space, Var::Q(j))),
        );
    }
    (d_s, e, x_s)
}

/// A box-relative basis of the harmonic space M_m: xy-degree m, zero
/// z-degree, q-degree at most q_max, exact kernel of D_s.
#[derive(Clone, Debug)]
pub struct HarmonicSlice {
    pub n: usize,
    pub m: u32,
    pub q_max: u32,
    pub basis: Vec<PolyVec>,
}

/// Monomials of xy-degree m, z-degree 0, q-degree <= q_max.
fn flat_slice(space: VarSpace, m: u32, q_max: u32) -> Vec<Exponents> {
    crate::weyl::slice_basis(space, m, q_max)
        .into_iter()
        .filter(|e| e.z == 0)
        .collect()
}

/// Kernel of a list of operators restricted to a span of monomials, with
/// images evaluated exactly (no truncation of the image side).
pub fn operator_kernel(space: VarSpace, domain: &[Exponents], ops: &[WeylOp]) -> Vec<PolyVec> {
    use std::collections::BTreeMap;
    let mut row_index: BTreeMap<(usize, Exponents), usize> = BTreeMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (col, mono) in domain.iter().enumerate() {
        let v = PolyVec::monomial(space, mono.clone(), GaussScalar::one());
        for (op_idx, op) in ops.iter().enumerate() {
            for (img, coef) in op.apply(&v).terms {
                let next = rows.len();
                let r = *row_index.entry((op_idx, img)).or_insert_with(|| {
                    rows.push(SparseRow::new());
                    next
                });
                rows[r].insert(col, coef);
            }
        }
    }
    nullspace(domain.len(), rows)
        .into_iter()
        .map(|coords| {
            let mut p = PolyVec::zero(space);
            for (col, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    p = p.add(&PolyVec::monomial(space, domain[col].clone(), c));
                }
            }
            p
        })
        .collect()
}

/// Exact box-relative basis of M_m = ker D_s on xy-degree-m spinors.
pub fn mm_basis(n: usize, m: u32, q_max: u32) -> HarmonicSlice {
    let space = VarSpace::fourier(n);
    let (d_s, _, _) = build_sl2_ops(space);
    let domain = flat_slice(space, m, q_max);
    let basis = operator_kernel(space, &domain, &[d_s]);
    HarmonicSlice { n, m, q_max, basis }
}

#[derive(Debug, thiserror::Error)]
pub enum FischerError {
    #[error("input has nonzero z-degree; the ladder decomposition lives at z-degree 0")]
    NonZeroZDegree,
    #[error("input is not xy-homogeneous; decompose weight components separately")]
    NotHomogeneous,
    #[error("ladder identity violated at r={r}: offending term {term}")]
    LadderViolation { r: u32, term: String },
}

/// Asserts the ladder identity
/// D_s X_s^r v = -i r (2m + 2n + r - 1)/2 X_s^(r-1) v for v in M_m.
pub fn ladder_check(n: usize, m: u32, r: u32, v: &PolyVec) -> Result<(), FischerError> {
    let space = VarSpace::fourier(n);
    let (d_s, _, x_s) = build_sl2_ops(space);
    if !d_s.apply(v).is_zero() {
        return Err(FischerError::LadderViolation {
            r,
            term: "input is not harmonic".into(),
        });
    }
    let xr = x_s.pow(r as usize).apply(v);
    let lhs = d_s.apply(&xr);
    let coef = -GaussScalar::i().scale(&(rat(r as i64, 2)
        * Rational::from_integer((2 * m as i64 + 2 * n as i64 + r as i64 - 1).into())));
    let rhs = if r == 0 {
        PolyVec::zero(space)
    } else {
        x_s.pow(r as usize - 1).apply(v).scale(&coef)
    };
    let defect = lhs.sub(&rhs);
    if let Some((term, _)) = defect.terms.iter().next() {
        return Err(FischerError::LadderViolation {
            r,
            term: PolyVec::monomial(space, term.clone(), GaussScalar::one()).to_string(),
        });
    }
    Ok(())
}

/// One Fischer component: v contains X_s^b * harmonic.
#[derive(Clone, Debug)]
pub struct FischerComponent {
    pub b: u32,
    /// The harmonic part m_b (in ker D_s).
    pub harmonic: PolyVec,
}

/// Ladder decomposition v = sum_b X_s^b m_b with m_b harmonic, for v of
/// z-degree 0 and homogeneous xy-degree. Uses the closed-form ladder
/// coefficient to invert D_s level by level.
pub fn decompose(n: usize, v: &PolyVec) -> Result<Vec<FischerComponent>, FischerError> {
    let space = VarSpace::fourier(n);
    if v.max_z_degree() > 0 {
        return Err(FischerError::NonZeroZDegree);
    }
    if v.is_zero() {
        return Ok(Vec::new());
    }
    let m = match v.homogeneity() {
        Some(m) => m,
        None => return Err(FischerError::NotHomogeneous),
    };
    let (d_s, _, x_s) = build_sl2_ops(space);
    let u = d_s.apply(v);
    let mut components: Vec<FischerComponent> = Vec::new();
    if !u.is_zero() {
        // recursively decompose D_s v at degree m-1, then lift each piece:
        // D_s(X_s^(b+1) w) = kappa_b X_s^b w for w in M_(m-b-1), with
        // kappa_b = -i (b+1)(2(m-b-1) + 2n + b)/2
        for comp in decompose(n, &u)? {
            let b = comp.b;
            let kappa = -GaussScalar::i().scale(&(rat(b as i64 + 1, 2)
                * Rational::from_integer(
                    (2 * (m as i64 - b as i64 - 1) + 2 * n as i64 + b as i64).into(),
                )));
            components.push(FischerComponent {
                b: b + 1,
                harmonic: comp.harmonic.scale(&kappa.inv()),
            });
        }
    }
    // the harmonic remainder at b = 0
    let mut rest = v.clone();
    for comp in &components {
        rest = rest.sub(&x_s.pow(comp.b as usize).apply(&comp.harmonic));
    }
    if !rest.is_zero() {
        debug_assert!(d_s.apply(&rest).is_zero());
        components.insert(
            0,
            FischerComponent {
                b: 0,
                harmonic: rest,
            },
        );
    }
    Ok(components)
}

/// Reassembles sum_b X_s^b m_b.
pub fn reconstruct(n: usize, components: &[FischerComponent]) -> PolyVec {
    let space = VarSpace::fourier(n);
    let (_, _, x_s) = build_sl2_ops(space);
    let mut out = PolyVec::zero(space);
    for comp in components {
        out = out.add(&x_s.pow(comp.b as usize).apply(&comp.harmonic));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::BasisTag;
    use crate::rep::{pi_hat, RepParams};
    use proptest::prelude::*;

    fn fs(n: usize) -> VarSpace {
        VarSpace::fourier(n)
    }

    #[test]
    fn sl2_commutation_relations() {
        for n in 1..=3usize {
            let s = fs(n);
            let (d_s, e, x_s) = build_sl2_ops(s);
            let e_n = e.add(&WeylOp::constant(s, GaussScalar::from_int(n as i64)));
            assert_eq!(e_n.commutator(&d_s), d_s.neg(), "[E+n, Ds] = -Ds");
            assert_eq!(
                x_s.commutator(&d_s),
                e_n.scale(&GaussScalar::i()),
                "[Xs, Ds] = i(E+n)"
            );
            assert_eq!(e_n.commutator(&x_s), x_s, "[E+n, Xs] = Xs");
        }
    }

    #[test]
    fn sl2_commutes_with_the_levi_action() {
        let n = 1;
        let p = RepParams::new(n, GaussScalar::from_ratio(1, 3));
        let (d_s, e, x_s) = build_sl2_ops(fs(n));
        for tag in [BasisTag::Ha(0, 0), BasisTag::Hb(0, 0), BasisTag::Hc(0, 0)] {
            let l = pi_hat(&p, tag);
            assert!(d_s.commutator(&l).is_zero(), "Ds vs {tag:?}");
            assert!(e.commutator(&l).is_zero(), "E vs {tag:?}");
            assert!(x_s.commutator(&l).is_zero(), "Xs vs {tag:?}");
        }
    }

    #[test]
    fn mm_basis_examples() {
        // (n=1, m=0, q<=2): all of {1, q1, q1^2}
        let h = mm_basis(1, 0, 2);
        assert_eq!(h.basis.len(), 3);
        // (n=1, m=1, q<=1): only x1
        let h = mm_basis(1, 1, 1);
        assert_eq!(h.basis.len(), 1);
        assert_eq!(h.basis[0], PolyVec::var(fs(1), Var::X(0)));
        // (n=1, m=1, q<=0): Ds(y1) = i q1 != 0, so again only x1
        let h = mm_basis(1, 1, 0);
        assert_eq!(h.basis.len(), 1);
        assert_eq!(h.basis[0], PolyVec::var(fs(1), Var::X(0)));
    }

    #[test]
    fn harmonicity_is_preserved_by_sp2n() {
        let n = 2;
        let p = RepParams::new(n, GaussScalar::from_ratio(-2, 5));
        let (d_s, _, _) = build_sl2_ops(fs(n));
        let slice = mm_basis(n, 2, 2);
        for tag in [
            BasisTag::Ha(0, 1),
            BasisTag::Hb(1, 1),
            BasisTag::Hc(0, 0),
        ] {
            let l = pi_hat(&p, tag);
            for v in &slice.basis {
                assert!(d_s.apply(&l.apply(v)).is_zero());
            }
        }
    }

    #[test]
    fn ladder_examples() {
        // n=1, m=0, r=1, v=1: Ds(Xs 1) = -i * 1
        let one = PolyVec::one(fs(1));
        ladder_check(1, 0, 1, &one).unwrap();
        let (d_s, _, x_s) = build_sl2_ops(fs(1));
        assert_eq!(
            d_s.apply(&x_s.apply(&one)),
            one.scale(&-GaussScalar::i())
        );
        // n=2, m=1, r=2, v=x1: coefficient -7i
        let x1 = PolyVec::var(fs(2), Var::X(0));
        ladder_check(2, 1, 2, &x1).unwrap();
        let (d_s2, _, x_s2) = build_sl2_ops(fs(2));
        assert_eq!(
            d_s2.apply(&x_s2.pow(2).apply(&x1)),
            x_s2.apply(&x1)
                .scale(&-GaussScalar::i().scale(&crate::scalar::rat_int(7)))
        );
    }

    #[test]
    fn decompose_examples() {
        let s = fs(1);
        // i x1 q1 = Xs(1)
        let mut e = Exponents::zero(1);
        e.x[0] = 1;
        e.q[0] = 1;
        let v = PolyVec::monomial(s, e, GaussScalar::i());
        let comps = decompose(1, &v).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].b, 1);
        assert_eq!(comps[0].harmonic, PolyVec::one(s));
        // x1 is already harmonic
        let x1 = PolyVec::var(s, Var::X(0));
        let comps = decompose(1, &x1).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].b, 0);
        assert_eq!(comps[0].harmonic, x1);
        // y1 decomposes with both components; verified by reconstruction
        let y1 = PolyVec::var(s, Var::Y(0));
        let comps = decompose(1, &y1).unwrap();
        assert_eq!(reconstruct(1, &comps), y1);
        let (d_s, _, _) = build_sl2_ops(s);
        for c in &comps {
            assert!(d_s.apply(&c.harmonic).is_zero());
        }
    }

    fn arb_flat_poly(n: usize, m: u32, q_max: u32) -> impl Strategy<Value = PolyVec> {
        let space = fs(n);
        let monos = flat_slice(space, m, q_max);
        let len = monos.len();
        proptest::collection::vec((-6i64..7, -6i64..7), len).prop_map(move |coefs| {
            let mut p = PolyVec::zero(space);
            for (mono, (re, im)) in monos.iter().zip(coefs) {
                p = p.add(&PolyVec::monomial(
                    space,
                    mono.clone(),
                    GaussScalar::new(rat(re, 1), rat(im, 1)),
                ));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn reconstruction_is_exact(v in arb_flat_poly(2, 3, 3)) {
            let comps = decompose(2, &v).unwrap();
            prop_assert_eq!(reconstruct(2, &comps), v);
            let (d_s, _, _) = build_sl2_ops(fs(2));
            for c in &comps {
                prop_assert!(d_s.apply(&c.harmonic).is_zero());
            }
        }
    }

    #[test]
    fn ladder_identity_over_bases() {
        for n in 1..=2usize {
            for m in 0..=3u32 {
                let slice = mm_basis(n, m, 2);
                for r in 0..=4u32 {
                    for v in &slice.basis {
                        ladder_check(n, m, r, v).unwrap();
                    }
                }
            }
        }
    }
}
