//! The quadratic-unit family with brackets among the X's: dim 4q + 2,
//! type (3q, q + 2). The first unit must be x^2 + a x + 1 with |a| >= 3 so
//! its roots are a real pair l, 1/l off the unit circle; the scale factor
//! (1/l - l) in the central lattice is what makes the X-X brackets land on
//! lattice vectors with coefficient one.

use super::realize::{realize_integer_basis, DesignBrackets, PrecisionPolicy, Realized};
use super::{family_words, finish_certificate, FamilyKind, FamilyParams};
use crate::cert::AnosovCertificate;
use crate::error::{CoreError, Result};
use crate::lie::{BasisLabel, NilpotentLieAlgebra, Role, StructureConstants};
use crate::matrix::IntMatrix;
use crate::poly::{
    complex_roots, composed_product, power_min_poly, power_sum, reciprocal, Approx, IntPolynomial,
};
use crate::units::{make_unit, validate_system};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy)]
struct Layout {
    q: usize,
}

impl Layout {
    fn x(&self, i: usize) -> usize {
        i // 0..2q
    }
    fn y(&self, t: usize) -> usize {
        2 * self.q + t
    }
    fn z(&self, l: usize) -> usize {
        3 * self.q + l // 0..q+1
    }
    fn dim(&self) -> usize {
        4 * self.q + 2
    }
}

/// f = x^2 + a x + 1 with |a| >= 3, validated.
fn check_first_unit(f: &IntPolynomial, family: &str) -> Result<i64> {
    if f.is_zero() || !f.is_monic() || f.degree() != 2 || !f.constant_term().is_one() {
        return Err(CoreError::InvalidInput(format!(
            "{family} needs a monic quadratic with constant term +1, got {f}"
        )));
    }
    let a = &f.coeff(1);
    if a.abs() < BigInt::from(3) {
        return Err(CoreError::InvalidInput(format!(
            "{family} needs |middle coefficient| >= 3 in {f}"
        )));
    }
    use num_traits::ToPrimitive;
    Ok(a.to_i64().expect("small coefficient"))
}

/// Coefficient rows expressing mu^s over the power basis mu^0..mu^{q-1}.
fn power_reduction_rows(g: &IntPolynomial, upto: usize) -> Vec<Vec<BigInt>> {
    let q = g.degree();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(upto + 1);
    for s in 0..=upto {
        if s < q {
            let mut row = vec![BigInt::zero(); q];
            row[s] = BigInt::one();
            rows.push(row);
        } else {
            // mu^s = -sum_j b_j mu^{s-q+j}
            let mut row = vec![BigInt::zero(); q];
            for j in 0..q {
                let b = g.coeff(j);
                if b.is_zero() {
                    continue;
                }
                let prev = rows[s - q + j].clone();
                for (dst, src) in row.iter_mut().zip(prev) {
                    *dst -= &b * src;
                }
            }
            rows.push(row);
        }
    }
    rows
}

pub fn build_p2_family(f: &IntPolynomial, g: &IntPolynomial) -> Result<AnosovCertificate> {
    check_first_unit(f, "p2-family")?;
    let uf = make_unit(f)?;
    let ug = make_unit(g)?;
    let q = ug.degree;
    let system = validate_system(&[uf, ug], &family_words(FamilyKind::P2Family))?;
    let lay = Layout { q };

    let mut sc = StructureConstants::new(lay.dim());
    let reduction = power_reduction_rows(g, 2 * q - 2);
    // [X_i, X_{q+i'}] = Z_{i+i'}, exponents >= q reduced through g.
    for i in 0..q {
        for ip in 0..q {
            for (k, c) in reduction[i + ip].iter().enumerate() {
                if !c.is_zero() {
                    sc.set(
                        lay.x(i),
                        lay.x(q + ip),
                        lay.z(k),
                        BigRational::from_integer(c.clone()),
                    );
                }
            }
        }
    }
    // [X_i, Y_t] = p_{i-t}(g) Z_q (first branch) or Z_{q+1} (second branch).
    for i in 0..q {
        for t in 0..q {
            let c = power_sum(g, i as i64 - t as i64)?;
            if !c.is_zero() {
                sc.set(
                    lay.x(i),
                    lay.y(t),
                    lay.z(q),
                    BigRational::from_integer(c.clone()),
                );
                sc.set(
                    lay.x(q + i),
                    lay.y(t),
                    lay.z(q + 1),
                    BigRational::from_integer(c),
                );
            }
        }
    }

    let mut labels = Vec::with_capacity(lay.dim());
    let mut layers = Vec::with_capacity(lay.dim());
    for i in 0..2 * q {
        labels.push(BasisLabel::new(Role::X, &[i as i32]));
        layers.push(1);
    }
    for t in 0..q {
        labels.push(BasisLabel::new(Role::Y, &[t as i32]));
        layers.push(1);
    }
    for l in 0..q + 2 {
        labels.push(BasisLabel::new(Role::Z, &[l as i32]));
        layers.push(2);
    }
    let algebra = NilpotentLieAlgebra::new(sc, labels, layers)?;

    let cf = IntMatrix::companion(f)?;
    let cg = IntMatrix::companion(g)?;
    let matrix = IntMatrix::block_diag(&[
        IntMatrix::kron(&cf, &cg),
        IntMatrix::companion(&reciprocal(g)?)?,
        cg.mul(&cg),
        cf.clone(),
    ]);
    let factors = vec![
        composed_product(f, g)?,
        reciprocal(g)?,
        power_min_poly(g, 2)?,
        f.clone(),
    ];

    finish_certificate(
        FamilyKind::P2Family,
        FamilyParams { p: 2, q, r: None },
        vec![f.clone(), g.clone()],
        algebra,
        matrix,
        factors,
        system,
    )
}

/// Realize-then-round cross-check against the closed form.
pub fn p2_realized(
    f: &IntPolynomial,
    g: &IntPolynomial,
    policy: &PrecisionPolicy,
) -> Result<Realized> {
    check_first_unit(f, "p2-family")?;
    let q = g.degree();
    let lay = Layout { q };
    let dim = lay.dim();
    // Design: X_k <-> l mu_k, X_{q+k} <-> 1/l mu_k, Y_k <-> 1/mu_k,
    // Z_k <-> mu_k^2 (k < q), Z_q <-> l, Z_{q+1} <-> 1/l.
    let mut design = DesignBrackets::new(dim);
    for k in 0..q {
        design.add(lay.x(k), lay.x(q + k), lay.z(k), 1);
        design.add(lay.x(k), lay.y(k), lay.z(q), 1);
        design.add(lay.x(q + k), lay.y(k), lay.z(q + 1), 1);
    }
    let (f, g) = (f.clone(), g.clone());
    let builder = move |target: f64| -> Result<Vec<Vec<Approx>>> {
        let lroots = complex_roots(&f, target)?;
        // Roots come sorted by decreasing real part; lambda is the first.
        let lam = Approx::from_root(lroots[0]);
        let lam_inv = Approx::from_root(lroots[1]);
        let mu: Vec<Approx> = complex_roots(&g, target)?
            .into_iter()
            .map(Approx::from_root)
            .collect();
        let mut cols = vec![vec![Approx::zero(); dim]; dim];
        for i in 0..q {
            // first branch: sum_k mu_k^i (X_k + X_{q+k})
            let col = &mut cols[lay.x(i)];
            for k in 0..q {
                let w = mu[k].powi(i as i64);
                col[lay.x(k)] = w;
                col[lay.x(q + k)] = w;
            }
            // second branch: sum_k mu_k^i (l X_k + 1/l X_{q+k})
            let col = &mut cols[lay.x(q + i)];
            for k in 0..q {
                let w = mu[k].powi(i as i64);
                col[lay.x(k)] = w.mul(lam);
                col[lay.x(q + k)] = w.mul(lam_inv);
            }
        }
        for t in 0..q {
            let col = &mut cols[lay.y(t)];
            for k in 0..q {
                col[lay.y(k)] = mu[k].powi(-(t as i64));
            }
        }
        let scale = lam_inv.sub(lam); // (1/l - l)
        for l in 0..q {
            let col = &mut cols[lay.z(l)];
            for k in 0..q {
                col[lay.z(k)] = scale.mul(mu[k].powi(l as i64));
            }
        }
        cols[lay.z(q)][lay.z(q)] = Approx::one();
        cols[lay.z(q)][lay.z(q + 1)] = Approx::one();
        cols[lay.z(q + 1)][lay.z(q)] = lam;
        cols[lay.z(q + 1)][lay.z(q + 1)] = lam_inv;
        Ok(cols)
    };
    realize_integer_basis(&design, &builder, policy)
}

pub(crate) fn check_quadratic_plus_one(f: &IntPolynomial, family: &str) -> Result<i64> {
    check_first_unit(f, family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify_certificate;
    use crate::lie::type_of;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn q2_printed_type() {
        let cert = build_p2_family(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        assert_eq!(cert.algebra.dim(), 10);
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![6, 4]);
        let report = verify_certificate(&cert);
        assert!(report.passed(), "findings: {:?}", report.findings);
    }

    #[test]
    fn q3_instantiated_type() {
        let cert = build_p2_family(&p(&[1, -3, 1]), &p(&[-1, -2, 1, 1])).unwrap();
        assert_eq!(cert.algebra.dim(), 14);
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![9, 5]);
        assert!(verify_certificate(&cert).passed());
    }

    #[test]
    fn xx_bracket_anchors() {
        // q = 2, g = x^2-x-1: [X_0, X_2] = Z_0, [X_1, X_3] = Z_0 + Z_1.
        let cert = build_p2_family(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        let lay = Layout { q: 2 };
        let one = BigRational::from_integer(BigInt::from(1));
        assert_eq!(
            cert.algebra.constants.basis_bracket(lay.x(0), lay.x(2)),
            vec![(lay.z(0), one.clone())]
        );
        assert_eq!(
            cert.algebra.constants.basis_bracket(lay.x(1), lay.x(3)),
            vec![(lay.z(0), one.clone()), (lay.z(1), one.clone())]
        );
        assert_eq!(
            cert.algebra.constants.basis_bracket(lay.x(0), lay.x(3)),
            vec![(lay.z(1), one.clone())]
        );
        // [X_0, Y_0] = p_0(g) Z_2 = 2 Z_2
        assert_eq!(
            cert.algebra.constants.basis_bracket(lay.x(0), lay.y(0)),
            vec![(lay.z(2), BigRational::from_integer(BigInt::from(2)))]
        );
    }

    #[test]
    fn subalgebra_on_x_and_low_z_closes() {
        let cert = build_p2_family(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        let lay = Layout { q: 2 };
        let subset: Vec<usize> = (0..2 * lay.q)
            .map(|i| lay.x(i))
            .chain((0..lay.q).map(|l| lay.z(l)))
            .collect();
        for &i in &subset {
            for &j in &subset {
                if i < j {
                    for (k, _) in cert.algebra.constants.basis_bracket(i, j) {
                        assert!(subset.contains(&k), "bracket leaves the subalgebra");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_equals_realized() {
        let f = p(&[1, -3, 1]);
        for g in [p(&[-1, -1, 1]), p(&[-1, -2, 1, 1])] {
            let cert = build_p2_family(&f, &g).unwrap();
            let realized = p2_realized(&f, &g, &PrecisionPolicy::default()).unwrap();
            assert_eq!(cert.algebra.constants, realized.constants);
        }
    }

    #[test]
    fn negative_lambda_branch() {
        // x^2+3x+1 puts the distinguished root at -0.38...; signs flow through
        // the (1/l - l) lattice scale and the exact checks still gate.
        let cert = build_p2_family(&p(&[1, 3, 1]), &p(&[-1, -1, 1])).unwrap();
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![6, 4]);
        assert!(verify_certificate(&cert).passed());
        let realized = p2_realized(
            &p(&[1, 3, 1]),
            &p(&[-1, -1, 1]),
            &PrecisionPolicy::default(),
        )
        .unwrap();
        assert_eq!(cert.algebra.constants, realized.constants);
    }

    #[test]
    fn first_unit_constraints_enforced() {
        // wrong constant term
        assert!(build_p2_family(&p(&[-1, -1, 1]), &p(&[-1, -1, 1])).is_err());
        // |a| < 3
        assert!(build_p2_family(&p(&[1, -1, 1]), &p(&[-1, -1, 1])).is_err());
        // wrong degree
        assert!(build_p2_family(&p(&[-1, -2, 1, 1]), &p(&[-1, -1, 1])).is_err());
    }
}
