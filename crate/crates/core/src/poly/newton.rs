//! Power sums of polynomial roots through Newton's identities, exact.

use super::compose::reciprocal;
use super::IntPolynomial;
use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Sum of the m-th powers of the roots of a monic integer polynomial.
///
/// Negative m requires a unit (constant term +-1) and is computed on the
/// reciprocal polynomial.
pub fn power_sum(f: &IntPolynomial, m: i64) -> Result<BigInt> {
    f.require_monic("power_sum")?;
    if m < 0 {
        if !f.has_unit_constant() {
            return Err(CoreError::NotAUnit(format!(
                "power_sum({f}, {m}): negative exponent needs constant term +-1"
            )));
        }
        return power_sum(&reciprocal(f)?, -m);
    }
    let sums = power_sums_upto(f, m as usize)?;
    Ok(sums[m as usize].clone())
}

/// p_0..p_max for a monic f, by the Newton recurrence.
pub fn power_sums_upto(f: &IntPolynomial, max: usize) -> Result<Vec<BigInt>> {
    f.require_monic("power_sums_upto")?;
    let d = f.degree();
    let a = |i: usize| f.coeff(i); // ascending coefficients, a_d = 1
    let mut p = Vec::with_capacity(max + 1);
    p.push(BigInt::from(d as i64));
    for m in 1..=max {
        // p_m + a_{d-1} p_{m-1} + ... + a_{d-m+1} p_1 + m a_{d-m} = 0  (m <= d)
        // p_m + a_{d-1} p_{m-1} + ... + a_0 p_{m-d} = 0                (m > d)
        let mut acc = BigInt::zero();
        let terms = if m <= d { m - 1 } else { d };
        for i in 1..=terms {
            acc += a(d - i) * &p[m - i];
        }
        if m <= d {
            acc += a(d - m) * BigInt::from(m as i64);
        }
        p.push(-acc);
    }
    Ok(p)
}

/// Monic polynomial of the given degree whose root power sums are p_1..p_d.
/// Requires the result to have integer coefficients; errors otherwise.
pub fn from_power_sums(psums: &[BigInt], degree: usize) -> Result<IntPolynomial> {
    use num_rational::BigRational;
    assert!(psums.len() > degree, "need p_0..p_degree");
    // k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    let mut e: Vec<BigRational> = vec![BigRational::from_integer(BigInt::from(1))];
    for k in 1..=degree {
        let mut acc = BigRational::zero();
        let mut sign = BigInt::from(1);
        for i in 1..=k {
            acc += &e[k - i] * BigRational::from_integer(&sign * &psums[i]);
            sign = -sign;
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k as i64)));
    }
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    for (k, ek) in e.iter().enumerate() {
        if !ek.is_integer() {
            return Err(CoreError::InvalidInput(format!(
                "power sums do not describe an integer polynomial (e_{k} = {ek})"
            )));
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[degree - k] = BigInt::from(sign) * ek.to_integer();
    }
    Ok(IntPolynomial::new(coeffs))
}
