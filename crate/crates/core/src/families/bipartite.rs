//! Two-step algebra of the complete bipartite graph on p + q vertices:
//! type (p+q, pq), integer from the start, no basis change needed.

use super::{family_words, finish_certificate, FamilyKind, FamilyParams};
use crate::cert::AnosovCertificate;
use crate::error::Result;
use crate::lie::{BasisLabel, NilpotentLieAlgebra, Role, StructureConstants};
use crate::matrix::IntMatrix;
use crate::poly::{composed_product, IntPolynomial};
use crate::units::{make_unit, validate_system};

pub fn build_bipartite(f: &IntPolynomial, g: &IntPolynomial) -> Result<AnosovCertificate> {
    let uf = make_unit(f)?;
    let ug = make_unit(g)?;
    let (p, q) = (uf.degree, ug.degree);
    let system = validate_system(&[uf, ug], &family_words(FamilyKind::Bipartite))?;

    let dim = p + q + p * q;
    let x = |i: usize| i;
    let y = |j: usize| p + j;
    let w = |i: usize, j: usize| p + q + i + p * j;

    let mut sc = StructureConstants::new(dim);
    for i in 0..p {
        for j in 0..q {
            sc.set_int(x(i), y(j), w(i, j), 1);
        }
    }
    let mut labels = Vec::with_capacity(dim);
    let mut layers = Vec::with_capacity(dim);
    for i in 0..p {
        labels.push(BasisLabel::new(Role::X, &[i as i32]));
        layers.push(1);
    }
    for j in 0..q {
        labels.push(BasisLabel::new(Role::Y, &[j as i32]));
        layers.push(1);
    }
    for j in 0..q {
        for i in 0..p {
            labels.push(BasisLabel::new(Role::Z, &[i as i32, j as i32]));
            layers.push(2);
        }
    }
    let algebra = NilpotentLieAlgebra::new(sc, labels, layers)?;

    let cf = IntMatrix::companion(f)?;
    let cg = IntMatrix::companion(g)?;
    let matrix = IntMatrix::block_diag(&[cf.clone(), cg.clone(), IntMatrix::kron(&cg, &cf)]);
    let factors = vec![f.clone(), g.clone(), composed_product(f, g)?];

    finish_certificate(
        FamilyKind::Bipartite,
        FamilyParams { p, q, r: None },
        vec![f.clone(), g.clone()],
        algebra,
        matrix,
        factors,
        system,
    )
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
    fn printed_type() {
        let cert = build_bipartite(&p(&[1, -3, 1]), &p(&[-1, -2, 1, 1])).unwrap();
        assert_eq!(cert.algebra.dim(), 11);
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![5, 6]);
        assert!(verify_certificate(&cert).passed());
    }

    #[test]
    fn square_case() {
        let cert = build_bipartite(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        assert_eq!(cert.algebra.dim(), 8);
        assert_eq!(type_of(&cert.algebra).unwrap(), vec![4, 4]);
    }
}
