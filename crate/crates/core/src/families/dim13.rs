//! The 13-dimensional indecomposable algebra of type (9,4): quadratic unit
//! x^2 + a x + 1 (|a| >= 3) and a cubic unit with constant term -1 (so the
//! product of its conjugates is 1). Structure constants come from
//! realize-then-round; the distinguished conjugate in the central lattice
//! sums is the one with the largest real part.

use super::p2::check_quadratic_plus_one;
use super::realize::{realize_integer_basis, DesignBrackets, PrecisionPolicy};
use super::{family_words, finish_certificate, FamilyKind, FamilyParams};
use crate::cert::AnosovCertificate;
use crate::error::{CoreError, Result};
use crate::lie::{BasisLabel, NilpotentLieAlgebra, Role, StructureConstants};
use crate::matrix::IntMatrix;
use crate::poly::{complex_roots, composed_product, reciprocal, Approx, IntPolynomial};
use crate::units::{make_unit, validate_system};
use num_bigint::BigInt;

const DIM: usize = 13;
const X0: usize = 0; // X0..X5
const Y0: usize = 6; // Y0..Y2
const ZM1: usize = 9; // Z_{-1}
const ZP1: usize = 10; // Z_{+1}
const WM1: usize = 11; // W_{-1}
const WP1: usize = 12; // W_{+1}

pub fn build_dim13(f: &IntPolynomial, g: &IntPolynomial) -> Result<AnosovCertificate> {
    check_quadratic_plus_one(f, "dim13")?;
    if g.is_zero() || !g.is_monic() || g.degree() != 3 || g.constant_term() != BigInt::from(-1) {
        return Err(CoreError::InvalidInput(format!(
            "dim13 needs a monic cubic with constant term -1, got {g}"
        )));
    }
    let uf = make_unit(f)?;
    let ug = make_unit(g)?;
    let system = validate_system(&[uf, ug], &family_words(FamilyKind::Dim13))?;

    let constants = realized_constants(f, g, &PrecisionPolicy::default())?;

    let mut labels = Vec::with_capacity(DIM);
    let mut layers = Vec::with_capacity(DIM);
    for i in 0..6 {
        labels.push(BasisLabel::new(Role::X, &[i as i32]));
        layers.push(1);
    }
    for r in 0..3 {
        labels.push(BasisLabel::new(Role::Y, &[r as i32]));
        layers.push(1);
    }
    for (role, idx) in [(Role::Z, -1), (Role::Z, 1), (Role::W, -1), (Role::W, 1)] {
        labels.push(BasisLabel::new(role, &[idx]));
        layers.push(2);
    }
    let algebra = NilpotentLieAlgebra::new(constants, labels, layers)
        .map_err(|e| CoreError::ConstructionBug(format!("dim13 rounding produced {e}")))?;

    let cf = IntMatrix::companion(f)?;
    let cg = IntMatrix::companion(g)?;
    let matrix = IntMatrix::block_diag(&[
        IntMatrix::kron(&cf, &cg),
        IntMatrix::companion(&reciprocal(g)?)?,
        IntMatrix::kron(&cf, &IntMatrix::identity(2)),
    ]);
    let factors = vec![
        composed_product(f, g)?,
        reciprocal(g)?,
        f.clone(),
        f.clone(),
    ];

    finish_certificate(
        FamilyKind::Dim13,
        FamilyParams {
            p: 2,
            q: 3,
            r: None,
        },
        vec![f.clone(), g.clone()],
        algebra,
        matrix,
        factors,
        system,
    )
}

fn realized_constants(
    f: &IntPolynomial,
    g: &IntPolynomial,
    policy: &PrecisionPolicy,
) -> Result<StructureConstants> {
    Ok(dim13_realized_with_policy(f, g, policy)?.0)
}

/// Realization with a caller-controlled precision policy; also returns the
/// attempt count so the escalation path is observable.
pub fn dim13_realized_with_policy(
    f: &IntPolynomial,
    g: &IntPolynomial,
    policy: &PrecisionPolicy,
) -> Result<(StructureConstants, u32)> {
    check_quadratic_plus_one(f, "dim13")?;
    // Design basis: X_k <-> l mu_{k+1} (k = 0..2), X_{3+k} <-> 1/l mu_{k+1},
    // Y_k <-> 1/mu_{k+1}, then Z_1, Z_2 <-> l, l and W_1, W_2 <-> 1/l, 1/l.
    // Brackets: [X_k, Y_k] = Z_{k+1} resp. W_{k+1}, third column negated sums.
    let mut design = DesignBrackets::new(DIM);
    let (z1, z2, w1, w2) = (9usize, 10usize, 11usize, 12usize);
    design.add(0, 6, z1, 1);
    design.add(1, 7, z2, 1);
    design.add(2, 8, z1, -1);
    design.add(2, 8, z2, -1);
    design.add(3, 6, w1, 1);
    design.add(4, 7, w2, 1);
    design.add(5, 8, w1, -1);
    design.add(5, 8, w2, -1);
    let (fc, gc) = (f.clone(), g.clone());
    let builder =
        move |target: f64| -> Result<Vec<Vec<Approx>>> { build_lattice(&fc, &gc, target) };
    let realized = realize_integer_basis(&design, &builder, policy)?;
    Ok((realized.constants, realized.attempts))
}

fn build_lattice(f: &IntPolynomial, g: &IntPolynomial, target: f64) -> Result<Vec<Vec<Approx>>> {
    let lroots = complex_roots(f, target)?;
    let lam = Approx::from_root(lroots[0]);
    let lam_inv = Approx::from_root(lroots[1]);
    let groots = complex_roots(g, target)?;
    let mu = [
        Approx::from_root(groots[1]),
        Approx::from_root(groots[2]),
        Approx::from_root(groots[0]),
    ];
    let mut cols = vec![vec![Approx::zero(); DIM]; DIM];
    for i in 0..3 {
        let col = &mut cols[X0 + i];
        for k in 0..3 {
            let w = mu[k].powi(i as i64);
            col[k] = w;
            col[3 + k] = w;
        }
        let col = &mut cols[X0 + 3 + i];
        for k in 0..3 {
            let w = mu[k].powi(i as i64);
            col[k] = w.mul(lam);
            col[3 + k] = w.mul(lam_inv);
        }
    }
    for r in 0..3 {
        let col = &mut cols[Y0 + r];
        for k in 0..3 {
            col[Y0 + k] = mu[k].powi(-(r as i64));
        }
    }
    for (col_idx, l, scaled) in [
        (ZM1, -1i64, false),
        (ZP1, 1, false),
        (WM1, -1, true),
        (WP1, 1, true),
    ] {
        let col = &mut cols[col_idx];
        for i in 0..2 {
            let d = mu[i].powi(l).sub(mu[2].powi(l));
            if scaled {
                col[9 + i] = d.mul(lam);
                col[11 + i] = d.mul(lam_inv);
            } else {
                col[9 + i] = d;
                col[11 + i] = d;
            }
        }
    }
    Ok(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify_certificate;
    use crate::lie::{center, derived_subalgebra, type_of};
    use num_rational::BigRational;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn shipped() -> (IntPolynomial, IntPolynomial) {
        (p(&[1, -3, 1]), p(&[-1, -2, 1, 1]))
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn type_and_verification() {
        let (f, g) = shipped();
        let cert = build_dim13(&f, &g).unwrap();
        assert_eq!(cert.algebra.dim(), 13);
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![9, 4]);
        let report = verify_certificate(&cert);
        assert!(report.passed(), "findings: {:?}", report.findings);
        assert!(report.semisimple);
    }

    #[test]
    fn paper_bracket_anchors() {
        let (f, g) = shipped();
        let cert = build_dim13(&f, &g).unwrap();
        let cs = &cert.algebra.constants;
        // [X_1, Y_0] = Z_1
        assert_eq!(cs.basis_bracket(1, Y0), vec![(ZP1, rat(1))]);
        // [X_2, Y_0] = n_1 Z_1 + Z_{-1} with n_1 = -1
        assert_eq!(cs.basis_bracket(2, Y0), vec![(ZM1, rat(1)), (ZP1, rat(-1))]);
        // [X_0, Y_0] = 0 = [X_3, Y_0]
        assert!(cs.basis_bracket(0, Y0).is_empty());
        assert!(cs.basis_bracket(3, Y0).is_empty());
        // [X_4, Y_0] = W_1
        assert_eq!(cs.basis_bracket(4, Y0), vec![(WP1, rat(1))]);
        // [X_5, Y_0] = n_1 W_1 + W_{-1}
        assert_eq!(cs.basis_bracket(5, Y0), vec![(WM1, rat(1)), (WP1, rat(-1))]);
        // [X_0, Y_1] = Z_{-1}
        assert_eq!(cs.basis_bracket(0, Y0 + 1), vec![(ZM1, rat(1))]);
        // [X_0, Y_2] = n_{-1} Z_{-1} + Z_1 with n_{-1} = -2
        assert_eq!(
            cs.basis_bracket(0, Y0 + 2),
            vec![(ZM1, rat(-2)), (ZP1, rat(1))]
        );
    }

    #[test]
    fn central_block_action() {
        // A Z_l = W_l and A W_l = -a W_l - Z_l with a = -3.
        let (f, g) = shipped();
        let cert = build_dim13(&f, &g).unwrap();
        let m = &cert.automorphism.matrix;
        // Column of Z_{-1} is W_{-1}.
        for i in 0..13 {
            let expect = if i == WM1 { 1 } else { 0 };
            assert_eq!(m[(i, ZM1)], BigInt::from(expect));
        }
        // Column of W_{-1} is -Z_{-1} + 3 W_{-1}.
        for i in 0..13 {
            let expect = if i == ZM1 {
                -1
            } else if i == WM1 {
                3
            } else {
                0
            };
            assert_eq!(m[(i, WM1)], BigInt::from(expect));
        }
    }

    #[test]
    fn center_equals_derived_dim_four() {
        let (f, g) = shipped();
        let cert = build_dim13(&f, &g).unwrap();
        let c = center(&cert.algebra);
        let d = derived_subalgebra(&cert.algebra);
        assert_eq!(c.rank(), 4);
        assert!(c.equals(&d));
    }

    #[test]
    fn escalation_path_recovers_from_coarse_start() {
        let (f, g) = shipped();
        let policy = PrecisionPolicy {
            initial_target: 1e-2,
            escalation: 1e-6,
            max_retries: 3,
        };
        let (constants, attempts) = dim13_realized_with_policy(&f, &g, &policy).unwrap();
        assert!(attempts > 1, "coarse start must escalate");
        let default = realized_constants(&f, &g, &PrecisionPolicy::default()).unwrap();
        assert_eq!(constants, default);
    }

    #[test]
    fn coarse_precision_without_retries_fails() {
        let (f, g) = shipped();
        let policy = PrecisionPolicy {
            initial_target: 1e-2,
            escalation: 1e-6,
            max_retries: 0,
        };
        assert!(matches!(
            dim13_realized_with_policy(&f, &g, &policy),
            Err(CoreError::PrecisionFailure(_))
        ));
    }

    #[test]
    fn input_constraints() {
        let (f, g) = shipped();
        // cubic with constant +1 rejected
        assert!(build_dim13(&f, &p(&[1, -2, -1, 1])).is_err());
        // quadratic with small middle coefficient rejected
        assert!(build_dim13(&p(&[1, -1, 1]), &g).is_err());
    }

    #[test]
    fn complex_conjugate_cubic_also_realizes() {
        // x^3 - x^2 - 1 has one real root and a complex pair; the central
        // lattice solve runs through genuinely complex data.
        let cert = build_dim13(&p(&[1, -3, 1]), &p(&[-1, 0, -1, 1])).unwrap();
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![9, 4]);
        let report = verify_certificate(&cert);
        assert!(report.passed(), "findings: {:?}", report.findings);
    }
}
