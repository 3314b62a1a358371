//! Sylvester resultants via fraction-free (Bareiss) elimination.

use super::IntPolynomial;
use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Res(f, g) = lead(f)^deg(g) * prod g(root_i of f), exact.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(CoreError::InvalidInput(
            "resultant of the zero polynomial".into(),
        ));
    }
    let m = f.degree();
    let n = g.degree();
    if m == 0 {
        return Ok(f.leading().pow(n as u32));
    }
    if n == 0 {
        return Ok(g.leading().pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // First n rows carry f (leading coefficient first), shifted.
    for row in 0..n {
        for (j, c) in f.coeffs().iter().enumerate() {
            mat[row][row + m - j] = c.clone();
        }
    }
    // Last m rows carry g.
    for row in 0..m {
        for (j, c) in g.coeffs().iter().enumerate() {
            mat[n + row][row + n - j] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Exact determinant of an integer matrix by Bareiss elimination.
pub fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = match (k..n).find(|&r| !mat[r][k].is_zero()) {
            Some(r) => r,
            None => return BigInt::zero(),
        };
        if pivot_row != k {
            mat.swap(k, pivot_row);
            sign = -sign;
        }
        if k + 1 == n {
            break;
        }
        let pivot = mat[k][k].clone();
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &mat[i][j] * &pivot - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    sign * mat[n - 1][n - 1].clone()
}

/// Resultant with respect to y of f(y) and a polynomial G(x, y) given by its
/// y-coefficients (each an element of Z[x]). Returns an element of Z[x].
pub fn resultant_y(f: &IntPolynomial, g_ycoeffs: &[IntPolynomial]) -> Result<IntPolynomial> {
    if f.is_zero() {
        return Err(CoreError::InvalidInput(
            "resultant of the zero polynomial".into(),
        ));
    }
    let mut gc: Vec<IntPolynomial> = g_ycoeffs.to_vec();
    while gc.last().map(IntPolynomial::is_zero).unwrap_or(false) {
        gc.pop();
    }
    if gc.is_empty() {
        return Err(CoreError::InvalidInput(
            "resultant of the zero polynomial".into(),
        ));
    }
    let m = f.degree();
    let n = gc.len() - 1;
    if m == 0 {
        let mut acc = IntPolynomial::one();
        for _ in 0..n {
            acc = acc.mul(&IntPolynomial::new(vec![f.leading().clone()]));
        }
        return Ok(acc);
    }
    if n == 0 {
        let mut acc = IntPolynomial::one();
        for _ in 0..m {
            acc = acc.mul(&gc[0]);
        }
        return Ok(acc);
    }
    let size = m + n;
    let zero = IntPolynomial::zero();
    let mut mat = vec![vec![zero; size]; size];
    for row in 0..n {
        for (j, c) in f.coeffs().iter().enumerate() {
            mat[row][row + m - j] = IntPolynomial::new(vec![c.clone()]);
        }
    }
    for row in 0..m {
        for (j, c) in gc.iter().enumerate() {
            mat[n + row][row + n - j] = c.clone();
        }
    }
    Ok(bareiss_det_poly(mat))
}

/// Bareiss elimination over Z[x]; all divisions are exact.
fn bareiss_det_poly(mut mat: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = mat.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n {
        let pivot_row = match (k..n).find(|&r| !mat[r][k].is_zero()) {
            Some(r) => r,
            None => return IntPolynomial::zero(),
        };
        if pivot_row != k {
            mat.swap(k, pivot_row);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let pivot = mat[k][k].clone();
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = mat[i][j].mul(&pivot).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division over Z[x] is exact");
            }
            mat[i][k] = IntPolynomial::zero();
        }
        prev = pivot;
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
