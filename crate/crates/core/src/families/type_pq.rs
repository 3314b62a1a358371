//! The two-unit construction: dim pq + p + q, type (pq + q, p).
//!
//! Basis: X(k,l) spanning the product block (eigenvalue words l1.m1), q
//! Y-vectors dual to the second unit, p Z-vectors carrying the first unit's
//! conjugates. Lattice brackets are integers in closed form: power sums of g.

use super::realize::{realize_integer_basis, DesignBrackets, PrecisionPolicy, Realized};
use super::{family_words, finish_certificate, FamilyKind, FamilyParams};
use crate::cert::AnosovCertificate;
use crate::error::Result;
use crate::lie::{BasisLabel, NilpotentLieAlgebra, Role, StructureConstants};
use crate::matrix::IntMatrix;
use crate::poly::{composed_product, power_sum, reciprocal, Approx, IntPolynomial};
use crate::units::{make_unit, validate_system};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Layout {
    p: usize,
    q: usize,
}

impl Layout {
    fn x(&self, k: usize, l: usize) -> usize {
        k + self.p * l
    }
    fn y(&self, r: usize) -> usize {
        self.p * self.q + r
    }
    fn z(&self, s: usize) -> usize {
        self.p * self.q + self.q + s
    }
    fn dim(&self) -> usize {
        self.p * self.q + self.p + self.q
    }
}

pub fn build_type_pq(f: &IntPolynomial, g: &IntPolynomial) -> Result<AnosovCertificate> {
    let uf = make_unit(f)?;
    let ug = make_unit(g)?;
    let (p, q) = (uf.degree, ug.degree);
    let system = validate_system(&[uf, ug], &family_words(FamilyKind::TypePQ))?;
    let lay = Layout { p, q };

    let mut sc = StructureConstants::new(lay.dim());
    for k in 0..p {
        for l in 0..q {
            for r in 0..q {
                let c = power_sum(g, l as i64 - r as i64)?;
                set_int(&mut sc, lay.x(k, l), lay.y(r), lay.z(k), c);
            }
        }
    }

    let mut labels = Vec::with_capacity(lay.dim());
    let mut layers = Vec::with_capacity(lay.dim());
    for l in 0..q {
        for k in 0..p {
            labels.push(BasisLabel::new(Role::X, &[k as i32, l as i32]));
            layers.push(1);
        }
    }
    for r in 0..q {
        labels.push(BasisLabel::new(Role::Y, &[r as i32]));
        layers.push(1);
    }
    for s in 0..p {
        labels.push(BasisLabel::new(Role::Z, &[s as i32]));
        layers.push(2);
    }
    let algebra = NilpotentLieAlgebra::new(sc, labels, layers)?;

    let cf = IntMatrix::companion(f)?;
    let cg = IntMatrix::companion(g)?;
    let matrix = IntMatrix::block_diag(&[
        IntMatrix::kron(&cg, &cf),
        IntMatrix::companion(&reciprocal(g)?)?,
        cf.clone(),
    ]);
    let factors = vec![composed_product(f, g)?, reciprocal(g)?, f.clone()];

    finish_certificate(
        FamilyKind::TypePQ,
        FamilyParams { p, q, r: None },
        vec![f.clone(), g.clone()],
        algebra,
        matrix,
        factors,
        system,
    )
}

fn set_int(sc: &mut StructureConstants, i: usize, j: usize, k: usize, c: BigInt) {
    use num_traits::Zero;
    if !c.is_zero() {
        sc.set(i, j, k, BigRational::from_integer(c));
    }
}

/// Independent route: the same structure constants computed numerically from
/// the conjugate lattice and rounded. Must agree exactly with the closed form.
pub fn type_pq_realized(
    f: &IntPolynomial,
    g: &IntPolynomial,
    policy: &PrecisionPolicy,
) -> Result<Realized> {
    let p = f.degree();
    let q = g.degree();
    let lay = Layout { p, q };
    let dim = lay.dim();
    // Design basis: X(i,j) <-> l_i m_j at i + p*j, Y_j <-> m_j^-1, Z_i <-> l_i.
    let mut design = DesignBrackets::new(dim);
    for i in 0..p {
        for j in 0..q {
            design.add(lay.x(i, j), lay.y(j), lay.z(i), 1);
        }
    }
    let f = f.clone();
    let g = g.clone();
    let builder = move |target: f64| -> Result<Vec<Vec<Approx>>> {
        let lam: Vec<Approx> = crate::poly::complex_roots(&f, target)?
            .into_iter()
            .map(Approx::from_root)
            .collect();
        let mu: Vec<Approx> = crate::poly::complex_roots(&g, target)?
            .into_iter()
            .map(Approx::from_root)
            .collect();
        let mut cols = vec![vec![Approx::zero(); dim]; dim];
        for k in 0..p {
            for l in 0..q {
                let col = &mut cols[lay.x(k, l)];
                for i in 0..p {
                    for j in 0..q {
                        col[lay.x(i, j)] = lam[i].powi(k as i64).mul(mu[j].powi(l as i64));
                    }
                }
            }
        }
        for r in 0..q {
            let col = &mut cols[lay.y(r)];
            for j in 0..q {
                col[lay.y(j)] = mu[j].powi(-(r as i64));
            }
        }
        for s in 0..p {
            let col = &mut cols[lay.z(s)];
            for i in 0..p {
                col[lay.z(i)] = lam[i].powi(s as i64);
            }
        }
        Ok(cols)
    };
    realize_integer_basis(&design, &builder, policy)
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
    fn printed_types_reproduced() {
        let f = p(&[1, -3, 1]);
        let g = p(&[-1, -2, 1, 1]);
        let cert = build_type_pq(&f, &g).unwrap();
        assert_eq!(cert.algebra.dim(), 11);
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![9, 2]);
        let swapped = build_type_pq(&g, &f).unwrap();
        assert_eq!(type_of(&swapped.algebra).unwrap(), vec![8, 3]);
        let small = build_type_pq(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        assert_eq!(small.algebra.dim(), 8);
        assert_eq!(type_of(&small.algebra).unwrap(), vec![6, 2]);
    }

    #[test]
    fn bracket_spot_value_is_a_power_sum() {
        // [X(1,0), Y_0] = p_0(g) Z_1 = deg(g) Z_1.
        let f = p(&[1, -3, 1]);
        let g = p(&[-1, -2, 1, 1]);
        let cert = build_type_pq(&f, &g).unwrap();
        let lay = Layout { p: 2, q: 3 };
        let br = cert.algebra.constants.basis_bracket(lay.x(1, 0), lay.y(0));
        assert_eq!(
            br,
            vec![(lay.z(1), BigRational::from_integer(BigInt::from(3)))]
        );
        // [X(0,1), Y_0] = p_1(g) Z_0 = -Z_0.
        let br = cert.algebra.constants.basis_bracket(lay.x(0, 1), lay.y(0));
        assert_eq!(
            br,
            vec![(lay.z(0), BigRational::from_integer(BigInt::from(-1)))]
        );
    }

    #[test]
    fn closed_form_equals_realized() {
        let f = p(&[1, -3, 1]);
        let g = p(&[-1, -2, 1, 1]);
        let cert = build_type_pq(&f, &g).unwrap();
        let realized = type_pq_realized(&f, &g, &PrecisionPolicy::default()).unwrap();
        assert_eq!(cert.algebra.constants, realized.constants);
    }

    #[test]
    fn full_verification_passes() {
        let cert = build_type_pq(&p(&[1, -3, 1]), &p(&[-1, -2, 1, 1])).unwrap();
        let report = verify_certificate(&cert);
        assert!(report.passed(), "findings: {:?}", report.findings);
        assert!(report.semisimple);
    }

    #[test]
    fn reciprocal_first_unit_also_verifies() {
        let f = p(&[-1, -2, 1, 1]);
        let fr = reciprocal(&f).unwrap();
        let g = p(&[1, -3, 1]);
        let cert = build_type_pq(&fr, &g).unwrap();
        assert!(verify_certificate(&cert).passed());
    }

    #[test]
    fn automorphism_squares_compose() {
        let cert = build_type_pq(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        let m2 = cert.automorphism.matrix.mul(&cert.automorphism.matrix);
        assert!(crate::lie::verify_automorphism(&cert.algebra, &m2).unwrap());
    }

    #[test]
    fn quartic_unit_in_first_slot() {
        // Exercise larger Kronecker blocks with a degree-4 unit found by the
        // bounded search.
        let quartics = crate::units::search_units(4, 2, None).unwrap();
        let golden = p(&[1, -3, 1]);
        let cert = quartics
            .iter()
            .find_map(|u| build_type_pq(&u.min_poly, &golden).ok())
            .expect("some quartic unit pairs with the golden-like one");
        assert_eq!(cert.algebra.dim(), 4 * 2 + 4 + 2);
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![10, 4]);
        assert!(verify_certificate(&cert).passed());
    }

    #[test]
    fn quotient_of_two_step_is_abelian_first_layer() {
        let cert = build_type_pq(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        let quo = crate::lie::quotient_by_last_layer(&cert.algebra).unwrap();
        assert_eq!(quo.dim(), 6);
        assert_eq!(type_of(&quo).unwrap(), vec![6]);
        assert_eq!(quo.constants.nonzero_count(), 0);
    }
}
