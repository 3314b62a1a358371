//! Algebraic units and the spectrum conditions a family needs: every
//! eigenvalue word of the would-be automorphism must stay off the unit circle.

use crate::error::{CoreError, Result};
use crate::poly::{
    complex_roots, composed_product, is_irreducible, power_min_poly, unit_circle_verdict,
    CirclenessVerdict, IntPolynomial, RootApprox,
};
use serde::{Deserialize, Serialize};

pub const DEFAULT_ROOT_TARGET: f64 = 1e-12;

/// Default certified radius for conjugate roots; the ANOSOV_PRECISION
/// environment variable (a decimal string) overrides it.
pub fn default_root_target() -> f64 {
    static TARGET: std::sync::OnceLock<f64> = std::sync::OnceLock::new();
    *TARGET.get_or_init(|| {
        std::env::var("ANOSOV_PRECISION")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|t| *t > 0.0 && *t < 1.0)
            .unwrap_or(DEFAULT_ROOT_TARGET)
    })
}

/// A validated algebraic unit: monic irreducible integer polynomial with
/// constant term +-1 and no conjugate on the unit circle.
#[derive(Clone, Debug)]
pub struct AlgebraicUnit {
    pub min_poly: IntPolynomial,
    pub degree: usize,
    pub conjugates: Vec<RootApprox>,
    pub circle_margin: f64,
    /// False when the degree was beyond exact irreducibility scope and only
    /// heuristic evidence backs irreducibility.
    pub exactly_verified: bool,
}

impl PartialEq for AlgebraicUnit {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}

/// Exponent vector describing one eigenvalue family of a block, e.g. (1,1,0)
/// for products of the first two units' conjugates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumWord(pub Vec<i64>);

impl SpectrumWord {
    pub fn new(exponents: &[i64]) -> Self {
        SpectrumWord(exponents.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn reciprocal(&self) -> SpectrumWord {
        SpectrumWord(self.0.iter().map(|&e| -e).collect())
    }
}

impl std::fmt::Display for SpectrumWord {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(out, "({})", parts.join(","))
    }
}

/// A unit tuple together with the word polynomials actually appearing in a
/// family's spectrum, each certified free of unit-circle roots.
#[derive(Clone, Debug)]
pub struct HyperbolicSystem {
    pub units: Vec<AlgebraicUnit>,
    pub words: Vec<SpectrumWord>,
    pub word_polys: Vec<IntPolynomial>,
    pub verdicts: Vec<CirclenessVerdict>,
    pub min_margin: f64,
}

pub fn make_unit(f: &IntPolynomial) -> Result<AlgebraicUnit> {
    make_unit_with_target(f, default_root_target())
}

pub fn make_unit_with_target(f: &IntPolynomial, target: f64) -> Result<AlgebraicUnit> {
    if f.is_zero() || !f.is_monic() {
        return Err(CoreError::NotAUnit(format!("{f} is not monic")));
    }
    if f.degree() == 0 {
        return Err(CoreError::NotAUnit("constant polynomial".into()));
    }
    if !f.has_unit_constant() {
        return Err(CoreError::NotAUnit(format!(
            "{f} has constant term {}, want +-1",
            f.constant_term()
        )));
    }
    let exactly_verified = match is_irreducible(f) {
        Ok(true) => true,
        Ok(false) => {
            return Err(CoreError::NotIrreducible(format!("{f} factors over Q")));
        }
        Err(CoreError::ScopeExceeded(_)) => false,
        Err(e) => return Err(e),
    };
    let verdict = unit_circle_verdict(f)?;
    if verdict.has_root_on_circle {
        return Err(CoreError::NotHyperbolic(format!(
            "{f} has a root on the unit circle"
        )));
    }
    let conjugates = complex_roots(f, target)?;
    let circle_margin = conjugates
        .iter()
        .map(|r| (r.z.norm() - 1.0).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(AlgebraicUnit {
        min_poly: f.clone(),
        degree: f.degree(),
        conjugates,
        circle_margin,
        exactly_verified,
    })
}

/// The monic integer polynomial whose roots are the products, over units with
/// a nonzero exponent, of conjugates raised to that exponent.
pub fn word_polynomial(units: &[AlgebraicUnit], word: &SpectrumWord) -> Result<IntPolynomial> {
    if word.0.len() != units.len() {
        return Err(CoreError::InvalidInput(format!(
            "word {word} has {} exponents for {} units",
            word.0.len(),
            units.len()
        )));
    }
    if word.is_zero() {
        return Err(CoreError::InvalidInput(
            "spectrum word must not be the zero vector".into(),
        ));
    }
    let mut acc: Option<IntPolynomial> = None;
    for (unit, &e) in units.iter().zip(&word.0) {
        if e == 0 {
            continue;
        }
        let p = power_min_poly(&unit.min_poly, e)?;
        acc = Some(match acc {
            None => p,
            Some(prev) => composed_product(&prev, &p)?,
        });
    }
    Ok(acc.expect("nonzero word"))
}

/// Validates the whole system: every word polynomial must avoid the unit
/// circle (decided exactly on its squarefree part).
pub fn validate_system(
    units: &[AlgebraicUnit],
    words: &[SpectrumWord],
) -> Result<HyperbolicSystem> {
    let mut word_polys = Vec::with_capacity(words.len());
    let mut verdicts = Vec::with_capacity(words.len());
    let mut min_margin = units
        .iter()
        .map(|u| u.circle_margin)
        .fold(f64::INFINITY, f64::min);
    for word in words {
        let wp = word_polynomial(units, word)?;
        let verdict = unit_circle_verdict(&wp)?;
        if verdict.has_root_on_circle {
            return Err(CoreError::NotHyperbolic(format!(
                "word {word} has an eigenvalue of modulus 1 (polynomial {wp})"
            )));
        }
        min_margin = min_margin.min(verdict.numeric_margin);
        word_polys.push(wp);
        verdicts.push(verdict);
    }
    Ok(HyperbolicSystem {
        units: units.to_vec(),
        words: words.to_vec(),
        word_polys,
        verdicts,
        min_margin,
    })
}

/// Deterministic enumeration of units of the given degree with coefficients
/// bounded by coeff_bound, optionally filtered by joint validation against
/// partner units. Output follows the lexicographic order of the ascending
/// coefficient tuple (a_0, ..., a_{d-1}).
pub fn search_units(
    degree: usize,
    coeff_bound: i64,
    pair_constraints: Option<&[(AlgebraicUnit, Vec<SpectrumWord>)]>,
) -> Result<Vec<AlgebraicUnit>> {
    if degree == 0 || degree > crate::poly::EXACT_IRREDUCIBILITY_DEGREE {
        return Err(CoreError::ScopeExceeded(format!(
            "unit search supports degrees 1..={}, got {degree}",
            crate::poly::EXACT_IRREDUCIBILITY_DEGREE
        )));
    }
    if coeff_bound < 1 {
        return Err(CoreError::InvalidInput("coeff_bound must be >= 1".into()));
    }
    let mut out = Vec::new();
    // a_0 in {-1, +1}; middle coefficients (a_1, ..., a_{d-1}) in
    // [-bound, bound], enumerated in lexicographic order with a_1 slowest.
    let width = (2 * coeff_bound + 1) as u64;
    let middles = degree - 1;
    let total: u64 = width.pow(middles as u32);
    for a0 in [-1i64, 1] {
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(degree + 1);
            coeffs.push(a0);
            let mut rem = idx;
            let mut digits = vec![0i64; middles];
            for d in (0..middles).rev() {
                digits[d] = (rem % width) as i64 - coeff_bound;
                rem /= width;
            }
            coeffs.extend_from_slice(&digits);
            coeffs.push(1);
            try_candidate(&coeffs, pair_constraints, &mut out);
        }
    }
    Ok(out)
}

fn try_candidate(
    coeffs: &[i64],
    pair_constraints: Option<&[(AlgebraicUnit, Vec<SpectrumWord>)]>,
    out: &mut Vec<AlgebraicUnit>,
) {
    let f = IntPolynomial::from_i64(coeffs);
    let unit = match make_unit(&f) {
        Ok(u) => u,
        Err(_) => return,
    };
    if let Some(constraints) = pair_constraints {
        for (partner, words) in constraints {
            if validate_system(&[partner.clone(), unit.clone()], words).is_err() {
                return;
            }
        }
    }
    out.push(unit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn golden_like_unit_accepted() {
        let u = make_unit(&p(&[1, -3, 1])).unwrap();
        assert_eq!(u.degree, 2);
        assert!((u.circle_margin - 0.6180339887498949).abs() < 1e-9);
        assert!(u.exactly_verified);
    }

    #[test]
    fn cyclotomic_rejected_as_non_hyperbolic() {
        assert!(matches!(
            make_unit(&p(&[1, -1, 1])),
            Err(CoreError::NotHyperbolic(_))
        ));
    }

    #[test]
    fn non_unit_constant_rejected() {
        assert!(matches!(
            make_unit(&p(&[-4, 0, 1])),
            Err(CoreError::NotAUnit(_))
        ));
    }

    #[test]
    fn reducible_rejected() {
        assert!(matches!(
            make_unit(&p(&[-1, 0, 1])),
            Err(CoreError::NotIrreducible(_))
        ));
    }

    #[test]
    fn two_unit_system_with_mixed_words() {
        let f = make_unit(&p(&[1, -3, 1])).unwrap();
        let g = make_unit(&p(&[-1, -2, 1, 1])).unwrap();
        let words = [
            SpectrumWord::new(&[1, 0]),
            SpectrumWord::new(&[0, 1]),
            SpectrumWord::new(&[1, 1]),
            SpectrumWord::new(&[-1, 1]),
        ];
        let sys = validate_system(&[f, g], &words).unwrap();
        assert!(sys.min_margin > 0.0);
        assert_eq!(sys.word_polys.len(), 4);
    }

    #[test]
    fn repeated_unit_product_hits_circle() {
        let f = make_unit(&p(&[1, -3, 1])).unwrap();
        let err = validate_system(&[f.clone(), f], &[SpectrumWord::new(&[1, 1])]);
        assert!(matches!(err, Err(CoreError::NotHyperbolic(_))));
    }

    #[test]
    fn empty_word_list_margin_from_units() {
        let f = make_unit(&p(&[1, -3, 1])).unwrap();
        let sys = validate_system(&[f.clone()], &[]).unwrap();
        assert_eq!(sys.min_margin, f.circle_margin);
    }

    #[test]
    fn degree_two_bound_three_enumeration() {
        let units = search_units(2, 3, None).unwrap();
        let polys: Vec<String> = units.iter().map(|u| u.min_poly.to_string()).collect();
        assert_eq!(
            polys,
            vec![
                "x^2-3x-1", "x^2-2x-1", "x^2-x-1", "x^2+x-1", "x^2+2x-1", "x^2+3x-1", "x^2-3x+1",
                "x^2+3x+1",
            ]
        );
    }

    #[test]
    fn degree_one_has_no_units() {
        assert!(search_units(1, 1, None).unwrap().is_empty());
        assert!(search_units(1, 5, None).unwrap().is_empty());
    }

    #[test]
    fn word_order_does_not_matter() {
        let f = make_unit(&p(&[1, -3, 1])).unwrap();
        let g = make_unit(&p(&[-1, -2, 1, 1])).unwrap();
        let words = [
            SpectrumWord::new(&[1, 0]),
            SpectrumWord::new(&[0, 1]),
            SpectrumWord::new(&[1, 1]),
        ];
        let reversed: Vec<SpectrumWord> = words.iter().rev().cloned().collect();
        let a = validate_system(&[f.clone(), g.clone()], &words).unwrap();
        let b = validate_system(&[f, g], &reversed).unwrap();
        assert_eq!(a.min_margin, b.min_margin);
        let mut av: Vec<bool> = a.verdicts.iter().map(|v| v.has_root_on_circle).collect();
        let mut bv: Vec<bool> = b.verdicts.iter().map(|v| v.has_root_on_circle).collect();
        av.sort();
        bv.sort();
        assert_eq!(av, bv);
    }

    #[test]
    fn appending_reciprocal_words_preserves_validity() {
        let f = make_unit(&p(&[1, -3, 1])).unwrap();
        let g = make_unit(&p(&[-1, -2, 1, 1])).unwrap();
        let mut words = vec![
            SpectrumWord::new(&[1, 0]),
            SpectrumWord::new(&[0, 1]),
            SpectrumWord::new(&[1, 1]),
        ];
        assert!(validate_system(&[f.clone(), g.clone()], &words).is_ok());
        let flipped: Vec<SpectrumWord> = words.iter().map(|w| w.reciprocal()).collect();
        words.extend(flipped);
        assert!(validate_system(&[f, g], &words).is_ok());
    }

    #[test]
    fn word_length_mismatch_rejected() {
        let f = make_unit(&p(&[1, -3, 1])).unwrap();
        assert!(matches!(
            validate_system(&[f.clone()], &[SpectrumWord::new(&[1, 0])]),
            Err(CoreError::InvalidInput(_))
        ));
        assert!(matches!(
            validate_system(&[f], &[SpectrumWord::new(&[0])]),
            Err(CoreError::InvalidInput(_))
        ));
    }

    #[test]
    fn search_results_revalidate() {
        for u in search_units(2, 2, None).unwrap() {
            assert!(make_unit(&u.min_poly).is_ok());
        }
    }

    #[test]
    fn paired_search_finds_cubic_partner() {
        let f = make_unit(&p(&[1, -3, 1])).unwrap();
        let constraints = [(f, vec![SpectrumWord::new(&[1, 1])])];
        let units = search_units(3, 2, Some(&constraints)).unwrap();
        assert!(units.iter().any(|u| u.min_poly == p(&[-1, -2, 1, 1])));
    }

    #[test]
    fn search_degree_cap() {
        assert!(matches!(
            search_units(7, 1, None),
            Err(CoreError::ScopeExceeded(_))
        ));
    }
}
