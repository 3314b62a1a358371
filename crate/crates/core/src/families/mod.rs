//! Family builders: each one turns a tuple of algebraic units into exact
//! integer data (structure constants over a lattice basis plus the assembled
//! unimodular automorphism) and packages a full certificate.

mod bipartite;
mod dim13;
mod dim16;
mod p2;
pub mod realize;
mod three_unit;
mod type_pq;

pub use bipartite::build_bipartite;
pub use dim13::{build_dim13, dim13_realized_with_policy};
pub use dim16::build_dim16;
pub use p2::{build_p2_family, p2_realized};
pub use three_unit::{build_three_unit_2step, build_three_unit_3step, three_unit_realized};
pub use type_pq::{build_type_pq, type_pq_realized};

use crate::cert::{AnosovCertificate, Family, IntegerAutomorphism, Margins};
use crate::error::{CoreError, Result};
use crate::lie::{verify_automorphism, NilpotentLieAlgebra};
use crate::matrix::IntMatrix;
use crate::poly::IntPolynomial;
use crate::units::{HyperbolicSystem, SpectrumWord};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    TypePQ,
    Bipartite,
    ThreeUnit2Step,
    ThreeUnit3Step,
    P2Family,
    Dim13,
    Dim16,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::TypePQ,
        FamilyKind::Bipartite,
        FamilyKind::ThreeUnit2Step,
        FamilyKind::ThreeUnit3Step,
        FamilyKind::P2Family,
        FamilyKind::Dim13,
        FamilyKind::Dim16,
    ];

    pub fn unit_count(self) -> usize {
        match self {
            FamilyKind::ThreeUnit2Step | FamilyKind::ThreeUnit3Step => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::TypePQ => "type-pq",
            FamilyKind::Bipartite => "bipartite",
            FamilyKind::ThreeUnit2Step => "three-unit-2step",
            FamilyKind::ThreeUnit3Step => "three-unit-3step",
            FamilyKind::P2Family => "p2-family",
            FamilyKind::Dim13 => "dim13",
            FamilyKind::Dim16 => "dim16",
        };
        write!(out, "{s}")
    }
}

impl FromStr for FamilyKind {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<FamilyKind> {
        Ok(match s {
            "type-pq" => FamilyKind::TypePQ,
            "bipartite" => FamilyKind::Bipartite,
            "three-unit-2step" => FamilyKind::ThreeUnit2Step,
            "three-unit-3step" => FamilyKind::ThreeUnit3Step,
            "p2-family" => FamilyKind::P2Family,
            "dim13" => FamilyKind::Dim13,
            "dim16" => FamilyKind::Dim16,
            other => return Err(CoreError::InvalidInput(format!("unknown family {other:?}"))),
        })
    }
}

/// Degrees of the units the family was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub p: usize,
    pub q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

/// The hypothesis words each family certifies before construction.
pub fn family_words(kind: FamilyKind) -> Vec<SpectrumWord> {
    let words: &[&[i64]] = match kind {
        FamilyKind::TypePQ | FamilyKind::Bipartite | FamilyKind::Dim16 => {
            &[&[1, 0], &[0, 1], &[1, 1]]
        }
        FamilyKind::ThreeUnit2Step | FamilyKind::ThreeUnit3Step => &[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ],
        FamilyKind::P2Family => &[&[1, 0], &[-1, 0], &[0, 1], &[1, 1], &[-1, 1], &[0, 2]],
        FamilyKind::Dim13 => &[&[1, 0], &[0, 1], &[1, 1], &[-1, 1]],
    };
    words.iter().map(|w| SpectrumWord::new(w)).collect()
}

/// Builds a certificate for the named family from parsed unit polynomials.
pub fn build(kind: FamilyKind, polys: &[IntPolynomial]) -> Result<AnosovCertificate> {
    if polys.len() != kind.unit_count() {
        return Err(CoreError::InvalidInput(format!(
            "family {kind} needs {} unit polynomials, got {}",
            kind.unit_count(),
            polys.len()
        )));
    }
    match kind {
        FamilyKind::TypePQ => build_type_pq(&polys[0], &polys[1]),
        FamilyKind::Bipartite => build_bipartite(&polys[0], &polys[1]),
        FamilyKind::ThreeUnit2Step => build_three_unit_2step(&polys[0], &polys[1], &polys[2]),
        FamilyKind::ThreeUnit3Step => build_three_unit_3step(&polys[0], &polys[1], &polys[2]),
        FamilyKind::P2Family => build_p2_family(&polys[0], &polys[1]),
        FamilyKind::Dim13 => build_dim13(&polys[0], &polys[1]),
        FamilyKind::Dim16 => build_dim16(&polys[0], &polys[1]),
    }
}

/// Shared assembly tail: exact equivariance, unimodularity and factorization
/// checks run before the certificate exists. An equivariance failure here is
/// a construction bug, never a user-input problem.
pub(crate) fn finish_certificate(
    kind: FamilyKind,
    params: FamilyParams,
    unit_polys: Vec<IntPolynomial>,
    algebra: NilpotentLieAlgebra,
    matrix: IntMatrix,
    factors: Vec<IntPolynomial>,
    system: HyperbolicSystem,
) -> Result<AnosovCertificate> {
    if !verify_automorphism(&algebra, &matrix)? {
        return Err(CoreError::ConstructionBug(format!(
            "assembled matrix is not an automorphism of the {kind} algebra"
        )));
    }
    let automorphism = IntegerAutomorphism::new(matrix, factors)
        .map_err(|e| CoreError::ConstructionBug(format!("{kind}: {e}")))?;
    let margins = Margins {
        min: system.min_margin,
        per_word: system.verdicts.iter().map(|v| v.numeric_margin).collect(),
    };
    Ok(AnosovCertificate {
        family: Family::Known(kind),
        params,
        unit_polys,
        algebra,
        automorphism,
        system: Some(system),
        margins,
    })
}
