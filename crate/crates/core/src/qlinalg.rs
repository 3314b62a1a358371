//! Small exact linear algebra over Q: row-reduced spans, kernels, membership.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QVec = Vec<BigRational>;

pub fn qvec_zero(n: usize) -> QVec {
    vec![BigRational::zero(); n]
}

pub fn qvec_unit(n: usize, i: usize) -> QVec {
    let mut v = qvec_zero(n);
    v[i] = BigRational::one();
    v
}

pub fn qvec_is_zero(v: &QVec) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Row space in reduced echelon form; supports rank, membership and equality.
#[derive(Clone, Debug, Default)]
pub struct Span {
    pub cols: usize,
    rows: Vec<QVec>,    // reduced, pivot-normalized
    pivots: Vec<usize>, // pivot column per row
}

impl Span {
    pub fn new(cols: usize) -> Self {
        Span {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = QVec>) -> Self {
        let mut s = Span::new(cols);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    /// Reduce v against the current rows; returns the residual.
    fn reduce(&self, mut v: QVec) -> QVec {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= &c * ri;
                }
            }
        }
        v
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: QVec) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(v);
        let pivot = match v.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let lead = v[pivot].clone();
        for c in v.iter_mut() {
            *c /= &lead;
        }
        // Back-substitute into existing rows to keep the basis reduced.
        for (row, &p) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(p != pivot);
            if !row[pivot].is_zero() {
                let c = row[pivot].clone();
                for (ri, vi) in row.iter_mut().zip(&v) {
                    *ri -= &c * vi;
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, pivot);
        true
    }

    pub fn contains(&self, v: &QVec) -> bool {
        qvec_is_zero(&self.reduce(v.clone()))
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn equals(&self, other: &Span) -> bool {
        self.rank() == other.rank() && self.contains_span(other)
    }

    /// Indices i with e_i in the span.
    pub fn coordinate_members(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&i| self.contains(&qvec_unit(self.cols, i)))
            .collect()
    }
}

/// Kernel basis of the linear map given by rows (each row is one equation).
pub fn kernel_basis(cols: usize, equations: &[QVec]) -> Vec<QVec> {
    let mut reduced = Span::new(cols);
    for eq in equations {
        reduced.insert(eq.clone());
    }
    let pivot_cols: Vec<usize> = reduced.pivots.clone();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = qvec_zero(cols);
        v[free] = BigRational::one();
        for (row, &p) in reduced.rows.iter().zip(&pivot_cols) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn qvec_from_ints(v: &[BigInt]) -> QVec {
    v.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QVec {
        v.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }

    #[test]
    fn span_rank_and_membership() {
        let mut s = Span::new(3);
        assert!(s.insert(q(&[1, 2, 3])));
        assert!(s.insert(q(&[0, 1, 1])));
        assert!(!s.insert(q(&[1, 3, 4])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&q(&[2, 5, 7])));
        assert!(!s.contains(&q(&[0, 0, 1])));
    }

    #[test]
    fn kernel_of_projection() {
        // x + y + z = 0
        let ker = kernel_basis(3, &[q(&[1, 1, 1])]);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let sum: BigRational = v.iter().cloned().sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn coordinate_members_detected() {
        let s = Span::from_rows(3, [q(&[1, 0, 0]), q(&[0, 0, 1])]);
        assert_eq!(s.coordinate_members(), vec![0, 2]);
    }
}
