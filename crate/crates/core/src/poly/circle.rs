//! Certified detection of roots on the unit circle.
//!
//! The decision is exact: roots at +-1 are found by evaluation, and any other
//! circle root of a real polynomial is shared with the reversed polynomial, so
//! it lives in gcd(f, rev f). That gcd has a root set closed under inversion;
//! the substitution y = x + 1/x turns its circle roots into real roots of an
//! integer polynomial inside [-2, 2], counted by Sturm sequences over Q.
//! Floating point only contributes the diagnostic margin.

use super::compose::reversed;
use super::roots::complex_roots;
use super::{gcd_primitive, squarefree_part, IntPolynomial};
use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleMethod {
    NonPalindromicGcd,
    SturmOnChebyshevTransform,
    RootAtPlusMinusOne,
    NumericOnly,
}

/// Exact verdict on unit-circle roots, with a numeric margin attached as a
/// diagnostic. Margin is 0 whenever a circle root was certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CirclenessVerdict {
    pub has_root_on_circle: bool,
    pub method: CircleMethod,
    pub numeric_margin: f64,
}

pub fn unit_circle_verdict(f: &IntPolynomial) -> Result<CirclenessVerdict> {
    f.require_monic("unit_circle_verdict")?;
    if f.degree() == 0 {
        return Err(CoreError::InvalidInput(
            "unit_circle_verdict of a constant".into(),
        ));
    }
    let sf = squarefree_part(f);
    if sf.eval_int(&BigInt::one()).is_zero() || sf.eval_int(&BigInt::from(-1)).is_zero() {
        return Ok(CirclenessVerdict {
            has_root_on_circle: true,
            method: CircleMethod::RootAtPlusMinusOne,
            numeric_margin: 0.0,
        });
    }
    // Drop roots at 0 (off the circle); they would degenerate the reversal.
    let mut body = sf.clone();
    while body.constant_term().is_zero() {
        body = body
            .exact_div(&IntPolynomial::from_i64(&[0, 1]))
            .expect("x divides");
    }
    let g = gcd_primitive(&body, &reversed(&body));
    if g.is_zero() || g.degree() == 0 {
        return Ok(CirclenessVerdict {
            has_root_on_circle: false,
            method: CircleMethod::NonPalindromicGcd,
            numeric_margin: numeric_margin(&sf),
        });
    }
    // g's root set is closed under z -> 1/z and avoids +-1 and 0, so g is
    // self-reciprocal with even degree.
    let transform = chebyshev_transform(&g)?;
    let roots_inside = sturm_count_interval(
        &transform,
        &BigRational::from_integer(BigInt::from(-2)),
        &BigRational::from_integer(BigInt::from(2)),
    );
    if roots_inside > 0 {
        Ok(CirclenessVerdict {
            has_root_on_circle: true,
            method: CircleMethod::SturmOnChebyshevTransform,
            numeric_margin: 0.0,
        })
    } else {
        Ok(CirclenessVerdict {
            has_root_on_circle: false,
            method: CircleMethod::SturmOnChebyshevTransform,
            numeric_margin: numeric_margin(&sf),
        })
    }
}

fn numeric_margin(sf: &IntPolynomial) -> f64 {
    match complex_roots(sf, 1e-9) {
        Ok(roots) => roots
            .iter()
            .map(|r| (r.z.norm() - 1.0).abs())
            .fold(f64::INFINITY, f64::min),
        Err(_) => 0.0,
    }
}

/// For self-reciprocal g of even degree 2m, the degree-m integer polynomial T
/// with g(z) = z^m T(z + 1/z), built from z^k + z^-k = D_k(y),
/// D_0 = 2, D_1 = y, D_k = y D_{k-1} - D_{k-2}.
fn chebyshev_transform(g: &IntPolynomial) -> Result<IntPolynomial> {
    let d = g.degree();
    if d % 2 != 0 {
        return Err(CoreError::ConstructionBug(format!(
            "self-reciprocal factor {g} has odd degree"
        )));
    }
    let m = d / 2;
    for k in 0..=d {
        if g.coeff(k) != g.coeff(d - k) {
            return Err(CoreError::ConstructionBug(format!(
                "gcd factor {g} is not self-reciprocal"
            )));
        }
    }
    let mut d_prev = IntPolynomial::from_i64(&[2]); // D_0
    let mut d_cur = IntPolynomial::from_i64(&[0, 1]); // D_1
    let y = d_cur.clone();
    let mut t = IntPolynomial::new(vec![g.coeff(m)]);
    for k in 1..=m {
        t = t.add(&d_cur.scale(&g.coeff(m + k)));
        let next = y.mul(&d_cur).sub(&d_prev);
        d_prev = d_cur;
        d_cur = next;
    }
    Ok(t)
}

/// Number of distinct real roots of f in the open interval (a, b);
/// f must not vanish at the endpoints.
pub fn sturm_count_interval(f: &IntPolynomial, a: &BigRational, b: &BigRational) -> usize {
    let sf = squarefree_part(f);
    if sf.degree() == 0 {
        return 0;
    }
    assert!(
        !sf.eval_rat(a).is_zero() && !sf.eval_rat(b).is_zero(),
        "Sturm endpoints must not be roots"
    );
    let chain = sturm_chain(&sf);
    let va = sign_changes(&chain, a);
    let vb = sign_changes(&chain, b);
    va - vb
}

fn sturm_chain(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let rem = pseudo_rem_signed(&chain[n - 2], &chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        chain.push(rem);
    }
    chain
}

/// -(a mod b) computed over Z with positive scaling so signs are preserved.
fn pseudo_rem_signed(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    // Multiply a by lead(b)^(deg a - deg b + 1); make the scale positive to
    // keep the Sturm sign structure.
    let da = a.degree();
    let db = b.degree();
    if da < db {
        return a.neg();
    }
    let mut scale = b.leading().pow((da - db + 1) as u32);
    if scale.is_negative() {
        scale = -scale * b.leading(); // one more power keeps it positive
    }
    let mut rem: Vec<BigInt> = a.coeffs().iter().map(|c| c * &scale).collect();
    let blead = b.leading();
    for k in (db..=da).rev() {
        let top = rem[k].clone();
        if top.is_zero() {
            continue;
        }
        debug_assert!((&top % blead).is_zero());
        let q = &top / blead;
        let shift = k - db;
        for (i, bc) in b.coeffs().iter().enumerate() {
            rem[shift + i] -= &q * bc;
        }
    }
    let rem = IntPolynomial::new(rem).neg();
    // Remove content to keep numbers small; positive scaling only.
    if rem.is_zero() {
        rem
    } else {
        let prim = rem.primitive();
        if rem.leading().is_negative() {
            prim.neg()
        } else {
            prim
        }
    }
}

fn sign_changes(chain: &[IntPolynomial], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = p.eval_rat(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn root_at_one() {
        let v = unit_circle_verdict(&p(&[-1, 1])).unwrap();
        assert!(v.has_root_on_circle);
        assert_eq!(v.method, CircleMethod::RootAtPlusMinusOne);
        assert_eq!(v.numeric_margin, 0.0);
        let v = unit_circle_verdict(&p(&[1, 1])).unwrap();
        assert!(v.has_root_on_circle);
        assert_eq!(v.method, CircleMethod::RootAtPlusMinusOne);
    }

    #[test]
    fn sixth_cyclotomic_on_circle() {
        // x^2-x+1 has roots e^(+-i pi/3); transform is y-1, root 1 in [-2,2].
        let v = unit_circle_verdict(&p(&[1, -1, 1])).unwrap();
        assert!(v.has_root_on_circle);
        assert_eq!(v.method, CircleMethod::SturmOnChebyshevTransform);
    }

    #[test]
    fn x2_plus_1_on_circle() {
        let v = unit_circle_verdict(&p(&[1, 0, 1])).unwrap();
        assert!(v.has_root_on_circle);
        assert_eq!(v.method, CircleMethod::SturmOnChebyshevTransform);
    }

    #[test]
    fn palindromic_unit_off_circle() {
        // x^2-3x+1: palindromic, transform y-3 has no root in [-2,2].
        let v = unit_circle_verdict(&p(&[1, -3, 1])).unwrap();
        assert!(!v.has_root_on_circle);
        assert_eq!(v.method, CircleMethod::SturmOnChebyshevTransform);
        assert!((v.numeric_margin - (1.0 - 0.38196601125010515)).abs() < 1e-6);
    }

    #[test]
    fn non_palindromic_golden() {
        let v = unit_circle_verdict(&p(&[-1, -1, 1])).unwrap();
        assert!(!v.has_root_on_circle);
        assert_eq!(v.method, CircleMethod::NonPalindromicGcd);
    }

    #[test]
    fn mixed_product_with_cyclotomic_factor() {
        // (x^2-x+1)(x^2-3x+1): circle roots certified through the gcd factor.
        let f = p(&[1, -1, 1]).mul(&p(&[1, -3, 1]));
        let v = unit_circle_verdict(&f).unwrap();
        assert!(v.has_root_on_circle);
    }

    #[test]
    fn sturm_counts_golden_pair() {
        // x^2-x-1 has two real roots, one in (0,2), one in (-2,0).
        let f = p(&[-1, -1, 1]);
        let m2 = BigRational::from_integer(BigInt::from(-2));
        let p2 = BigRational::from_integer(BigInt::from(2));
        assert_eq!(sturm_count_interval(&f, &m2, &p2), 2);
        let z = BigRational::zero();
        assert_eq!(sturm_count_interval(&f, &z, &p2), 1);
    }

    #[test]
    fn non_squarefree_input_handled() {
        let f = p(&[1, -3, 1]).mul(&p(&[1, -3, 1]));
        let v = unit_circle_verdict(&f).unwrap();
        assert!(!v.has_root_on_circle);
    }

    #[test]
    fn non_monic_and_constant_inputs_rejected() {
        assert!(matches!(
            unit_circle_verdict(&p(&[1, 2])),
            Err(CoreError::InvalidInput(_))
        ));
        assert!(unit_circle_verdict(&p(&[5])).is_err());
    }

    #[test]
    fn root_at_zero_stripped_before_reversal() {
        // x (x^2-3x+1): the zero root is off the circle and must not
        // degenerate the gcd with the reversed polynomial.
        let f = p(&[0, 1]).mul(&p(&[1, -3, 1]));
        let v = unit_circle_verdict(&f).unwrap();
        assert!(!v.has_root_on_circle);
        let g = p(&[0, 1]).mul(&p(&[1, -1, 1]));
        assert!(unit_circle_verdict(&g).unwrap().has_root_on_circle);
    }
}
