//! Root-set transforms: reciprocal polynomials, composed products and
//! polynomials of root powers, all through exact resultants.

use super::resultant::resultant_y;
use super::IntPolynomial;
use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Monic polynomial whose roots are the inverses of f's roots.
/// Requires f monic with constant term +-1.
pub fn reciprocal(f: &IntPolynomial) -> Result<IntPolynomial> {
    f.require_monic("reciprocal")?;
    if !f.has_unit_constant() {
        return Err(CoreError::NotAUnit(format!(
            "reciprocal({f}): constant term {} is not +-1",
            f.constant_term()
        )));
    }
    let mut coeffs: Vec<BigInt> = f.coeffs().to_vec();
    coeffs.reverse();
    IntPolynomial::new(coeffs).normalized_monic()
}

/// x^d f(1/x) without the unit requirement; used for gcd-based circle tests.
pub(crate) fn reversed(f: &IntPolynomial) -> IntPolynomial {
    let mut coeffs: Vec<BigInt> = f.coeffs().to_vec();
    coeffs.reverse();
    IntPolynomial::new(coeffs)
}

/// Monic polynomial of degree deg(f)*deg(g) whose root multiset is all
/// pairwise products of roots of f and g, via Res_y(f(y), y^n g(x/y)).
pub fn composed_product(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntPolynomial> {
    f.require_monic("composed_product")?;
    g.require_monic("composed_product")?;
    if f.constant_term().is_zero() || g.constant_term().is_zero() {
        return Err(CoreError::InvalidInput(format!(
            "composed_product({f}, {g}): zero constant term"
        )));
    }
    let n = g.degree();
    // y^n g(x/y) = sum_k b_k x^k y^{n-k}; coefficient of y^j is b_{n-j} x^{n-j}.
    let mut ycoeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut c = vec![BigInt::zero(); n - j + 1];
        c[n - j] = g.coeff(n - j);
        ycoeffs.push(IntPolynomial::new(c));
    }
    let res = resultant_y(f, &ycoeffs)?;
    let out = res.normalized_monic().map_err(|_| {
        CoreError::ConstructionBug(format!(
            "composed product of {f} and {g} is not +-monic: {res}"
        ))
    })?;
    debug_assert_eq!(out.degree(), f.degree() * g.degree());
    Ok(out)
}

/// Monic polynomial whose roots are the a-th powers of f's roots.
/// a = 0 gives (x-1)^deg f; negative a requires a unit.
pub fn power_min_poly(f: &IntPolynomial, a: i64) -> Result<IntPolynomial> {
    f.require_monic("power_min_poly")?;
    if a == 0 {
        let mut acc = IntPolynomial::one();
        let xm1 = IntPolynomial::from_i64(&[-1, 1]);
        for _ in 0..f.degree() {
            acc = acc.mul(&xm1);
        }
        return Ok(acc);
    }
    if a < 0 {
        if !f.has_unit_constant() {
            return Err(CoreError::NotAUnit(format!(
                "power_min_poly({f}, {a}): negative exponent needs constant term +-1"
            )));
        }
        return power_min_poly(&reciprocal(f)?, -a);
    }
    if a == 1 {
        return Ok(f.clone());
    }
    // Res_y(f(y), x - y^a): y-coefficients are [x, 0, ..., 0, -1].
    let mut ycoeffs = vec![IntPolynomial::zero(); a as usize + 1];
    ycoeffs[0] = IntPolynomial::from_i64(&[0, 1]);
    ycoeffs[a as usize] = IntPolynomial::from_i64(&[-1]);
    let res = resultant_y(f, &ycoeffs)?;
    let out = res.normalized_monic().map_err(|_| {
        CoreError::ConstructionBug(format!("power polynomial of {f}^{a} is not +-monic: {res}"))
    })?;
    debug_assert_eq!(out.degree(), f.degree());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::newton::{from_power_sums, power_sums_upto};
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn reciprocal_examples() {
        let f = p(&[1, -3, 1]);
        assert_eq!(reciprocal(&f).unwrap(), f); // palindromic
        assert_eq!(reciprocal(&p(&[-1, -2, 1, 1])).unwrap(), p(&[-1, -1, 2, 1]));
        assert!(reciprocal(&p(&[-2, 1])).is_err());
    }

    #[test]
    fn composed_linear() {
        assert_eq!(
            composed_product(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(),
            p(&[-6, 1])
        );
    }

    #[test]
    fn composed_rejects_zero_constant_term() {
        assert!(matches!(
            composed_product(&p(&[0, 1]), &p(&[-3, 1])),
            Err(CoreError::InvalidInput(_))
        ));
        assert!(matches!(
            composed_product(&p(&[-3, 1]), &p(&[0, 0, 1])),
            Err(CoreError::InvalidInput(_))
        ));
    }

    #[test]
    fn composed_quadratic_by_linear() {
        // roots 2*l_i: e1 = 6, e2 = 4
        assert_eq!(
            composed_product(&p(&[1, -3, 1]), &p(&[-2, 1])).unwrap(),
            p(&[4, -6, 1])
        );
    }

    #[test]
    fn composed_self_product_divisible_by_x_minus_1_twice() {
        let f = p(&[1, -3, 1]);
        let c = composed_product(&f, &f).unwrap();
        assert_eq!(c.degree(), 4);
        let xm1 = p(&[-1, 1]);
        let once = c.exact_div(&xm1).expect("l1*l2 = 1 is a root");
        assert!(once.exact_div(&xm1).is_some());
    }

    #[test]
    fn composed_matches_power_sum_route() {
        // Independent construction: p_k of products factor as p_k(f) * p_k(g).
        let cases = [
            (p(&[1, -3, 1]), p(&[-1, -2, 1, 1])),
            (p(&[-1, -1, 1]), p(&[1, 3, 1])),
            (p(&[-1, -2, 1]), p(&[-1, -1, 1])),
        ];
        for (f, g) in cases {
            let d = f.degree() * g.degree();
            let pf = power_sums_upto(&f, d).unwrap();
            let pg = power_sums_upto(&g, d).unwrap();
            let prod: Vec<_> = pf.iter().zip(&pg).map(|(a, b)| a * b).collect();
            let via_sums = from_power_sums(&prod, d).unwrap();
            assert_eq!(composed_product(&f, &g).unwrap(), via_sums);
        }
    }

    #[test]
    fn power_min_poly_examples() {
        let f = p(&[1, -3, 1]);
        assert_eq!(power_min_poly(&f, 1).unwrap(), f);
        assert_eq!(power_min_poly(&f, -1).unwrap(), f);
        assert_eq!(power_min_poly(&f, 2).unwrap(), p(&[1, -7, 1]));
        assert_eq!(power_min_poly(&f, 0).unwrap(), p(&[1, -2, 1]));
        assert!(power_min_poly(&p(&[-2, 1]), -1).is_err());
    }

    #[test]
    fn power_min_poly_matches_power_sum_route() {
        let f = p(&[-1, -2, 1, 1]);
        for a in 2..=4i64 {
            let d = f.degree();
            let sums = power_sums_upto(&f, d * a as usize).unwrap();
            let picked: Vec<_> = (0..=d).map(|m| sums[m * a as usize].clone()).collect();
            let via_sums = from_power_sums(&picked, d).unwrap();
            assert_eq!(power_min_poly(&f, a).unwrap(), via_sums);
        }
    }
}
