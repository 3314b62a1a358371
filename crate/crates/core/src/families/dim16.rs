//! The 16-dimensional indecomposable algebra: two copies of the complete
//! bipartite K(2,3) vertex space sharing one edge space, bracket
//! [(x1, x2, w), (y1, y2, w')] = [x1, y1] + [x2, y2]. Integer from the start.

use super::p2::check_quadratic_plus_one;
use super::{family_words, finish_certificate, FamilyKind, FamilyParams};
use crate::cert::AnosovCertificate;
use crate::error::{CoreError, Result};
use crate::lie::{BasisLabel, NilpotentLieAlgebra, Role, StructureConstants};
use crate::matrix::IntMatrix;
use crate::poly::{composed_product, IntPolynomial};
use crate::units::{make_unit, validate_system};

pub fn build_dim16(f: &IntPolynomial, g: &IntPolynomial) -> Result<AnosovCertificate> {
    check_quadratic_plus_one(f, "dim16")?;
    if g.is_zero() || !g.is_monic() || g.degree() != 3 {
        return Err(CoreError::InvalidInput(format!(
            "dim16 needs a monic cubic unit as second input, got {g}"
        )));
    }
    let uf = make_unit(f)?;
    let ug = make_unit(g)?;
    let (p, q) = (uf.degree, ug.degree);
    let system = validate_system(&[uf, ug], &family_words(FamilyKind::Dim16))?;

    let dim = 2 * (p + q) + p * q;
    let x = |copy: usize, i: usize| copy * (p + q) + i;
    let y = |copy: usize, j: usize| copy * (p + q) + p + j;
    let w = |i: usize, j: usize| 2 * (p + q) + i + p * j;

    let mut sc = StructureConstants::new(dim);
    for copy in 0..2 {
        for i in 0..p {
            for j in 0..q {
                sc.set_int(x(copy, i), y(copy, j), w(i, j), 1);
            }
        }
    }
    let mut labels = Vec::with_capacity(dim);
    let mut layers = Vec::with_capacity(dim);
    for copy in 0..2u32 {
        for i in 0..p {
            labels.push(BasisLabel::with_copy(Role::X, &[i as i32], copy + 1));
            layers.push(1);
        }
        for j in 0..q {
            labels.push(BasisLabel::with_copy(Role::Y, &[j as i32], copy + 1));
            layers.push(1);
        }
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
    let matrix = IntMatrix::block_diag(&[
        cf.clone(),
        cg.clone(),
        cf.clone(),
        cg.clone(),
        IntMatrix::kron(&cg, &cf),
    ]);
    let factors = vec![
        f.clone(),
        g.clone(),
        f.clone(),
        g.clone(),
        composed_product(f, g)?,
    ];

    finish_certificate(
        FamilyKind::Dim16,
        FamilyParams { p, q, r: None },
        vec![f.clone(), g.clone()],
        algebra,
        matrix,
        factors,
        system,
    )
}
