//! Exact integer matrices: companions, Kronecker products, determinants and
//! characteristic polynomials.

use crate::error::{CoreError, Result};
use crate::poly::resultant::bareiss_det;
use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CoreError::InvalidInput("matrix is not square".into()));
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [BigInt] {
        &mut self.data
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal, last
    /// column the negated coefficients; characteristic polynomial = input.
    pub fn companion(f: &IntPolynomial) -> Result<Self> {
        f.require_monic("companion")?;
        let d = f.degree();
        if d == 0 {
            return Err(CoreError::InvalidInput(
                "companion of a constant polynomial".into(),
            ));
        }
        let mut m = Self::zeros(d);
        for i in 1..d {
            m[(i, i - 1)] = BigInt::one();
        }
        for i in 0..d {
            m[(i, d - 1)] = -f.coeff(i);
        }
        Ok(m)
    }

    /// Kronecker product; the first factor owns the slow index:
    /// entry ((ia*nb+ib), (ja*nb+jb)) = a[ia,ja] * b[ib,jb].
    pub fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = a.n * b.n;
        let mut m = IntMatrix::zeros(n);
        for ia in 0..a.n {
            for ja in 0..a.n {
                let av = &a[(ia, ja)];
                if av.is_zero() {
                    continue;
                }
                for ib in 0..b.n {
                    for jb in 0..b.n {
                        let bv = &b[(ib, jb)];
                        if bv.is_zero() {
                            continue;
                        }
                        m[(ia * b.n + ib, ja * b.n + jb)] = av * bv;
                    }
                }
            }
        }
        m
    }

    pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = IntMatrix::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    if !b[(i, j)].is_zero() {
                        m[(off + i, off + j)] = b[(i, j)].clone();
                    }
                }
            }
            off += b.n;
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= c;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn det(&self) -> BigInt {
        let rows: Vec<Vec<BigInt>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].clone()).collect())
            .collect();
        bareiss_det(rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Monic characteristic polynomial det(xI - M), computed exactly by
    /// evaluating integer determinants at x = 0..n and interpolating over Q.
    pub fn charpoly(&self) -> IntPolynomial {
        let n = self.n;
        if n == 0 {
            return IntPolynomial::one();
        }
        let mut points = Vec::with_capacity(n + 1);
        for t in 0..=n {
            let mut rows: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| -self[(i, j)].clone()).collect())
                .collect();
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] += BigInt::from(t as i64);
            }
            points.push((BigInt::from(t as i64), bareiss_det(rows)));
        }
        let poly = lagrange_interpolate(&points);
        debug_assert!(poly.is_monic() && poly.degree() == n);
        poly
    }

    /// Restriction to a coordinate subset (rows and columns).
    pub fn submatrix(&self, indices: &[usize]) -> IntMatrix {
        let k = indices.len();
        let mut m = IntMatrix::zeros(k);
        for (i, &ri) in indices.iter().enumerate() {
            for (j, &cj) in indices.iter().enumerate() {
                m[(i, j)] = self[(ri, cj)].clone();
            }
        }
        m
    }

    /// Evaluate a polynomial at the matrix (Horner).
    pub fn eval_poly(&self, f: &IntPolynomial) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.n + j]
    }
}

fn lagrange_interpolate(points: &[(BigInt, BigInt)]) -> IntPolynomial {
    // Newton's divided differences over Q, then expansion.
    let n = points.len();
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer(x.clone()))
        .collect();
    let mut table: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    let mut coeffs_newton = vec![table[0].clone()];
    for level in 1..n {
        for i in 0..n - level {
            let num = &table[i + 1] - &table[i];
            let den = &xs[i + level] - &xs[i];
            table[i] = num / den;
        }
        table.truncate(n - level);
        coeffs_newton.push(table[0].clone());
    }
    // Expand sum_k c_k prod_{i<k} (x - x_i).
    let mut acc = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::zero(); n];
    basis[0] = BigRational::one();
    let mut basis_len = 1;
    for (k, c) in coeffs_newton.iter().enumerate() {
        for i in 0..basis_len {
            acc[i] += c * &basis[i];
        }
        if k + 1 < n {
            // basis *= (x - x_k)
            for i in (0..basis_len).rev() {
                let b = basis[i].clone();
                basis[i + 1] += &b;
                basis[i] = -(&xs[k] * &b);
            }
            basis_len += 1;
        }
    }
    let ints: Vec<BigInt> = acc
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "characteristic polynomial must be integral");
            c.to_integer()
        })
        .collect();
    IntPolynomial::new(ints)
}
