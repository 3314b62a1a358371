//! Certificates: algebra + integer automorphism + hyperbolicity evidence,
//! their verification from first principles, and the on-disk format.

use crate::error::{CoreError, Result};
use crate::families::{family_words, FamilyKind, FamilyParams};
use crate::lie::{
    self, central_series_spans, jacobi_defect, BasisLabel, NilpotentLieAlgebra, StructureConstants,
};
use crate::matrix::IntMatrix;
use crate::poly::{squarefree_part, unit_circle_verdict, CircleMethod, IntPolynomial};
use crate::qlinalg::Span;
use crate::units::{make_unit, validate_system, HyperbolicSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub const SCHEMA_VERSION: u32 = 1;

/// Integer matrix with its characteristic polynomial in factored form.
/// Construction verifies det = +-1 and the factorization identity exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerAutomorphism {
    pub matrix: IntMatrix,
    pub charpoly_factors: Vec<IntPolynomial>,
}

impl IntegerAutomorphism {
    pub fn new(matrix: IntMatrix, charpoly_factors: Vec<IntPolynomial>) -> Result<Self> {
        let det = matrix.det();
        if !det.abs().is_one() {
            return Err(CoreError::InvalidInput(format!(
                "automorphism determinant {det} is not +-1"
            )));
        }
        let product = charpoly_factors
            .iter()
            .fold(IntPolynomial::one(), |acc, f| acc.mul(f));
        if product != matrix.charpoly() {
            return Err(CoreError::InvalidInput(
                "charpoly factors do not multiply to the characteristic polynomial".into(),
            ));
        }
        Ok(IntegerAutomorphism {
            matrix,
            charpoly_factors,
        })
    }
}

/// Margins are diagnostics only; the exact data is the certificate.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Margins {
    pub min: f64,
    pub per_word: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Known(FamilyKind),
    /// Quotient of a known family by its last layer; algebra-only provenance.
    Quotient(FamilyKind),
    /// Hand-assembled algebra without construction provenance.
    Adhoc,
}

impl fmt::Display for Family {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Known(k) => write!(out, "{k}"),
            Family::Quotient(k) => write!(out, "quotient:{k}"),
            Family::Adhoc => write!(out, "adhoc"),
        }
    }
}

impl FromStr for Family {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Family> {
        if s == "adhoc" {
            return Ok(Family::Adhoc);
        }
        if let Some(rest) = s.strip_prefix("quotient:") {
            return Ok(Family::Quotient(rest.parse()?));
        }
        Ok(Family::Known(s.parse()?))
    }
}

/// The unit of serialization and verification.
#[derive(Clone, Debug)]
pub struct AnosovCertificate {
    pub family: Family,
    pub params: FamilyParams,
    pub unit_polys: Vec<IntPolynomial>,
    pub algebra: NilpotentLieAlgebra,
    pub automorphism: IntegerAutomorphism,
    pub system: Option<HyperbolicSystem>,
    pub margins: Margins,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub check: String,
    pub detail: String,
}

/// Aggregated result of every exact check; side flags never fail a report.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub findings: Vec<Finding>,
    pub checks_passed: Vec<String>,
    pub semisimple: bool,
    pub unverified_degree: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    fn record(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.checks_passed.push(check.to_string());
        } else {
            self.findings.push(Finding {
                check: check.to_string(),
                detail: detail(),
            });
        }
    }
}

/// Re-runs every exact check on the certificate, trusting nothing.
pub fn verify_certificate(cert: &AnosovCertificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    let alg = &cert.algebra;
    let m = &cert.automorphism.matrix;
    let dim = alg.dim();

    let defect = jacobi_defect(&alg.constants);
    report.record("jacobi", defect.is_zero(), || {
        format!("Jacobi defect {defect}")
    });

    let series = central_series_spans(alg);
    match &series {
        Ok(_) => report.checks_passed.push("nilpotent".into()),
        Err(e) => report.findings.push(Finding {
            check: "nilpotent".into(),
            detail: e.to_string(),
        }),
    }

    if m.n != dim {
        report.findings.push(Finding {
            check: "automorphism-size".into(),
            detail: format!("matrix is {}x{}, algebra dim {dim}", m.n, m.n),
        });
        return report;
    }

    match lie::verify_automorphism(alg, m) {
        Ok(ok) => report.record("equivariance", ok, || {
            "matrix is not a Lie algebra automorphism".into()
        }),
        Err(e) => report.findings.push(Finding {
            check: "equivariance".into(),
            detail: e.to_string(),
        }),
    }

    let det = m.det();
    report.record("determinant", det.abs().is_one(), || format!("det = {det}"));

    // Declared grading must reproduce the computed central series:
    // C^t = span{e_i : layer(i) > t} for every t.
    let step = alg.step();
    if let Ok(spans) = &series {
        let mut grading_ok = spans.len() == step + 1;
        if grading_ok {
            for (t, span) in spans.iter().enumerate() {
                let declared_span = Span::from_rows(
                    dim,
                    (0..dim)
                        .filter(|&i| alg.layer_of[i] > t)
                        .map(|i| crate::qlinalg::qvec_unit(dim, i)),
                );
                if !declared_span.equals(span) {
                    grading_ok = false;
                }
            }
        }
        report.record("grading", grading_ok, || {
            "declared grading disagrees with the computed central series".into()
        });
    }

    let mut layer_block_ok = true;
    let mut layer_detail = String::new();
    for layer in 1..=step {
        let idx: Vec<usize> = (0..dim).filter(|&i| alg.layer_of[i] == layer).collect();
        // Preservation: columns of layer members live in the layer.
        for &j in &idx {
            for i in 0..dim {
                if alg.layer_of[i] != layer && !m[(i, j)].is_zero() {
                    layer_block_ok = false;
                    layer_detail = format!("column {j} leaks outside layer {layer}");
                }
            }
        }
        let block = m.submatrix(&idx);
        if !block.det().abs().is_one() {
            layer_block_ok = false;
            layer_detail = format!("layer {layer} block determinant is not +-1");
        }
    }
    report.record("layer-blocks", layer_block_ok, || layer_detail.clone());

    let product = cert
        .automorphism
        .charpoly_factors
        .iter()
        .fold(IntPolynomial::one(), |acc, f| acc.mul(f));
    let charpoly = m.charpoly();
    report.record("charpoly-factorization", product == charpoly, || {
        format!("factors multiply to {product}, characteristic polynomial is {charpoly}")
    });

    let mut circle_ok = true;
    let mut circle_detail = String::new();
    for f in &cert.automorphism.charpoly_factors {
        match unit_circle_verdict(f) {
            Ok(v) => {
                if v.has_root_on_circle || v.method == CircleMethod::NumericOnly {
                    circle_ok = false;
                    circle_detail = format!("factor {f} has a root on the unit circle");
                }
            }
            Err(e) => {
                circle_ok = false;
                circle_detail = format!("factor {f}: {e}");
            }
        }
    }
    report.record("factor-circle-free", circle_ok, || circle_detail.clone());

    // Unit re-validation and family word system.
    let mut units = Vec::new();
    let mut units_ok = true;
    let mut unit_detail = String::new();
    for f in &cert.unit_polys {
        match make_unit(f) {
            Ok(u) => {
                report.unverified_degree |= !u.exactly_verified;
                units.push(u);
            }
            Err(e) => {
                units_ok = false;
                unit_detail = format!("unit {f}: {e}");
            }
        }
    }
    report.record("units", units_ok, || unit_detail.clone());
    if units_ok {
        if let Family::Known(kind) = &cert.family {
            let words = family_words(*kind);
            match validate_system(&units, &words) {
                Ok(_) => report.checks_passed.push("word-system".into()),
                Err(e) => report.findings.push(Finding {
                    check: "word-system".into(),
                    detail: e.to_string(),
                }),
            }
        }
    }

    // Semisimplicity side flag: quick sufficient condition first, exact
    // annihilation by the squarefree characteristic polynomial otherwise.
    report.semisimple = factors_separable(&cert.automorphism.charpoly_factors)
        || m.eval_poly(&squarefree_part(&charpoly)).is_zero();

    report
}

fn factors_separable(factors: &[IntPolynomial]) -> bool {
    for (i, f) in factors.iter().enumerate() {
        if crate::poly::gcd_primitive(f, &f.derivative()).degree() > 0 {
            return false;
        }
        for g in factors.iter().skip(i + 1) {
            if crate::poly::gcd_primitive(f, g).degree() > 0 {
                return false;
            }
        }
    }
    true
}

// --- on-disk format ---------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CertFile {
    schema_version: u32,
    family: String,
    params: FamilyParams,
    unit_polys: Vec<IntPolynomial>,
    dim: usize,
    labels: Vec<String>,
    /// [i, j, k, numerator, denominator], sorted lexicographically.
    brackets: Vec<(usize, usize, usize, String, String)>,
    /// Row-major decimal strings.
    automorphism: Vec<String>,
    charpoly_factors: Vec<IntPolynomial>,
    margins: MarginsFile,
    #[serde(rename = "type")]
    type_tuple: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct MarginsFile {
    min: String,
    per_word: Vec<String>,
}

pub fn certificate_to_json(cert: &AnosovCertificate) -> Result<String> {
    let alg = &cert.algebra;
    let mut brackets: Vec<(usize, usize, usize, String, String)> = alg
        .constants
        .to_rows()
        .into_iter()
        .map(|(i, j, k, c)| (i, j, k, c.numer().to_string(), c.denom().to_string()))
        .collect();
    brackets.sort();
    let file = CertFile {
        schema_version: SCHEMA_VERSION,
        family: cert.family.to_string(),
        params: cert.params.clone(),
        unit_polys: cert.unit_polys.clone(),
        dim: alg.dim(),
        labels: alg.labels.iter().map(|l| l.to_string()).collect(),
        brackets,
        automorphism: cert
            .automorphism
            .matrix
            .entries()
            .iter()
            .map(|e| e.to_string())
            .collect(),
        charpoly_factors: cert.automorphism.charpoly_factors.clone(),
        margins: MarginsFile {
            min: format!("{}", cert.margins.min),
            per_word: cert
                .margins
                .per_word
                .iter()
                .map(|m| format!("{m}"))
                .collect(),
        },
        type_tuple: lie::type_of(alg)?,
    };
    serde_json::to_string_pretty(&file)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CoreError::Parse(format!("serialization failed: {e}")))
}

pub fn certificate_from_json(text: &str) -> Result<AnosovCertificate> {
    let file: CertFile = serde_json::from_str(text)
        .map_err(|e| CoreError::Parse(format!("bad certificate file: {e}")))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(CoreError::Parse(format!(
            "unsupported schema version {}",
            file.schema_version
        )));
    }
    let family: Family = file.family.parse()?;
    let dim = file.dim;
    if file.labels.len() != dim {
        return Err(CoreError::Parse(format!(
            "{} labels for dim {dim}",
            file.labels.len()
        )));
    }
    let labels: Vec<BasisLabel> = file
        .labels
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let raw: Vec<(usize, usize, usize, BigRational)> = file
        .brackets
        .iter()
        .map(|(i, j, k, num, den)| {
            let n = BigInt::from_str(num)
                .map_err(|e| CoreError::Parse(format!("bad numerator {num:?}: {e}")))?;
            let d = BigInt::from_str(den)
                .map_err(|e| CoreError::Parse(format!("bad denominator {den:?}: {e}")))?;
            if d.is_zero() {
                return Err(CoreError::Parse("zero denominator".into()));
            }
            Ok((*i, *j, *k, BigRational::new(n, d)))
        })
        .collect::<Result<_>>()?;
    let constants = StructureConstants::from_entries(dim, &raw)?;
    if file.automorphism.len() != dim * dim {
        return Err(CoreError::Parse(format!(
            "automorphism has {} entries for dim {dim}",
            file.automorphism.len()
        )));
    }
    let mut matrix = IntMatrix::zeros(dim);
    for (pos, s) in file.automorphism.iter().enumerate() {
        matrix.entries_mut()[pos] =
            BigInt::from_str(s).map_err(|e| CoreError::Parse(format!("bad entry {s:?}: {e}")))?;
    }

    // Reconstruct the grading from the computed central series; the declared
    // type is cross-checked by verification.
    let provisional = NilpotentLieAlgebra {
        constants: constants.clone(),
        labels: labels.clone(),
        layer_of: vec![1; dim],
    };
    let spans = central_series_spans(&provisional)?;
    let mut layer_of = vec![0usize; dim];
    for (i, layer) in layer_of.iter_mut().enumerate() {
        let e = crate::qlinalg::qvec_unit(dim, i);
        let mut deepest = 0;
        for (t, span) in spans.iter().enumerate() {
            if span.contains(&e) {
                deepest = t;
            }
        }
        *layer = deepest + 1;
    }
    let algebra = NilpotentLieAlgebra::new(constants, labels, layer_of)?;
    let declared_type = lie::type_of(&algebra)?;
    if declared_type != file.type_tuple {
        return Err(CoreError::Parse(format!(
            "declared type {:?} does not match computed type {:?}",
            file.type_tuple, declared_type
        )));
    }

    let automorphism = IntegerAutomorphism::new(matrix, file.charpoly_factors)?;
    let margins = Margins {
        min: file
            .margins
            .min
            .parse()
            .map_err(|e| CoreError::Parse(format!("bad margin: {e}")))?,
        per_word: file
            .margins
            .per_word
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|e| CoreError::Parse(format!("bad margin: {e}")))
            })
            .collect::<Result<_>>()?,
    };
    // The word system is rebuilt during verification for known families.
    let system = None;
    Ok(AnosovCertificate {
        family,
        params: file.params,
        unit_polys: file.unit_polys,
        algebra,
        automorphism,
        system,
        margins,
    })
}

pub fn write_certificate_file(cert: &AnosovCertificate, path: &std::path::Path) -> Result<()> {
    let json = certificate_to_json(cert)?;
    std::fs::write(path, json)
        .map_err(|e| CoreError::Parse(format!("cannot write {}: {e}", path.display())))
}

pub fn read_certificate_file(path: &std::path::Path) -> Result<AnosovCertificate> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::Parse(format!("cannot read {}: {e}", path.display())))?;
    certificate_from_json(&text)
}

/// Parse + full verification, the function behind `verify` in the CLI.
pub fn verify_certificate_file(
    path: &std::path::Path,
) -> Result<(AnosovCertificate, VerificationReport)> {
    let cert = read_certificate_file(path)?;
    let report = verify_certificate(&cert);
    Ok((cert, report))
}

/// Quotient by the last layer. The induced automorphism block is copied from
/// the parent and re-verified; provenance is downgraded to quotient status.
pub fn quotient_certificate(cert: &AnosovCertificate) -> Result<AnosovCertificate> {
    let alg = &cert.algebra;
    let quotient = lie::quotient_by_last_layer(alg)?;
    let step = alg.step();
    let keep: Vec<usize> = (0..alg.dim()).filter(|&i| alg.layer_of[i] < step).collect();
    // The assembled matrices are layer-block-diagonal, so the restriction to
    // the kept coordinates is the induced map.
    for &j in &keep {
        for i in 0..alg.dim() {
            if alg.layer_of[i] == step && !cert.automorphism.matrix[(i, j)].is_zero() {
                return Err(CoreError::InvalidInput(
                    "automorphism does not restrict to the quotient basis".into(),
                ));
            }
        }
    }
    if !lie::verify_automorphism(&quotient, &cert.automorphism.matrix.submatrix(&keep))? {
        return Err(CoreError::InvalidInput(
            "restricted matrix is not an automorphism of the quotient".into(),
        ));
    }
    // Trailing factors belong to the dropped layer; remove them and verify
    // the factorization identity from scratch.
    let dropped_dim = alg.dim() - keep.len();
    let mut factors = cert.automorphism.charpoly_factors.clone();
    let mut removed = 0;
    while removed < dropped_dim {
        let last = factors
            .pop()
            .ok_or_else(|| CoreError::ConstructionBug("factor list exhausted".into()))?;
        removed += last.degree();
    }
    if removed != dropped_dim {
        return Err(CoreError::ConstructionBug(
            "charpoly factors do not align with the dropped layer".into(),
        ));
    }
    let automorphism =
        IntegerAutomorphism::new(cert.automorphism.matrix.submatrix(&keep), factors)?;
    let family = match &cert.family {
        Family::Known(k) | Family::Quotient(k) => Family::Quotient(*k),
        Family::Adhoc => Family::Adhoc,
    };
    Ok(AnosovCertificate {
        family,
        params: cert.params.clone(),
        unit_polys: cert.unit_polys.clone(),
        algebra: quotient,
        automorphism,
        system: None,
        margins: cert.margins.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_type_pq;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn family_string_roundtrip() {
        for s in ["type-pq", "dim13", "quotient:three-unit-3step", "adhoc"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("nonsense".parse::<Family>().is_err());
    }

    #[test]
    fn automorphism_constructor_checks_det_and_factors() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(IntegerAutomorphism::new(m, vec![p(&[-2, 1]), p(&[-1, 1])]).is_err());
        let m = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert!(IntegerAutomorphism::new(m.clone(), vec![p(&[-1, 1]), p(&[1, 1])]).is_err());
        assert!(IntegerAutomorphism::new(m, vec![p(&[-1, 1]), p(&[-1, 1])]).is_ok());
    }

    #[test]
    fn json_roundtrip_preserves_everything() {
        let cert = build_type_pq(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        let json = certificate_to_json(&cert).unwrap();
        let back = certificate_from_json(&json).unwrap();
        assert_eq!(back.algebra.constants, cert.algebra.constants);
        assert_eq!(back.algebra.labels, cert.algebra.labels);
        assert_eq!(back.algebra.layer_of, cert.algebra.layer_of);
        assert_eq!(back.automorphism.matrix, cert.automorphism.matrix);
        assert_eq!(certificate_to_json(&back).unwrap(), json);
    }

    #[test]
    fn verify_flags_edited_factor_list() {
        let cert = build_type_pq(&p(&[1, -3, 1]), &p(&[-1, -1, 1])).unwrap();
        let mut bad = cert.clone();
        // Swap a factor for x - 1: breaks the factorization identity, and the
        // factor itself sits on the unit circle.
        bad.automorphism.charpoly_factors[2] = p(&[-1, 1]);
        let report = verify_certificate(&bad);
        assert!(!report.passed());
        let names: Vec<&str> = report.findings.iter().map(|f| f.check.as_str()).collect();
        assert!(names.contains(&"charpoly-factorization"));
        assert!(names.contains(&"factor-circle-free"));
    }

    #[test]
    fn quotient_certificate_downgrades_and_verifies() {
        let f = p(&[1, -3, 1]);
        let g = p(&[-1, -1, 1]);
        let h = p(&[-1, -2, 1]);
        let three = crate::families::build_three_unit_3step(&f, &g, &h).unwrap();
        let quo = quotient_certificate(&three).unwrap();
        assert_eq!(quo.algebra.dim(), three.algebra.dim() - 2);
        assert!(matches!(quo.family, Family::Quotient(_)));
        let report = verify_certificate(&quo);
        assert!(report.passed(), "findings: {:?}", report.findings);
    }
}
