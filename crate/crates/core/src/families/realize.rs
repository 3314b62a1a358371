//! Realize-then-round: structure constants are proposed numerically from
//! conjugate roots and rounded to the integer grid; every rounded result must
//! afterwards survive the exact checks (Jacobi, equivariance) or the
//! construction fails. Numerics only propose, exactness gates.

use crate::error::{CoreError, Result};
use crate::lie::StructureConstants;
use crate::poly::Approx;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

#[derive(Clone, Copy, Debug)]
pub struct PrecisionPolicy {
    pub initial_target: f64,
    pub escalation: f64,
    pub max_retries: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            initial_target: 1e-12,
            escalation: 1e-6,
            max_retries: 3,
        }
    }
}

pub const ROUND_TOLERANCE: f64 = 0.25;

/// Design-basis bracket table with small integer coefficients.
#[derive(Clone, Debug, Default)]
pub struct DesignBrackets {
    pub dim: usize,
    pub entries: Vec<(usize, usize, usize, i64)>, // i < j: [e_i, e_j] = sum c e_k
}

impl DesignBrackets {
    pub fn new(dim: usize) -> Self {
        DesignBrackets {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, c: i64) {
        assert!(i < j && k < self.dim && c != 0);
        self.entries.push((i, j, k, c));
    }
}

/// Result of a successful realization, with the attempt count exposed so the
/// escalation path is observable.
#[derive(Clone, Debug)]
pub struct Realized {
    pub constants: StructureConstants,
    pub attempts: u32,
}

/// Rounds the structure constants of the lattice basis whose columns the
/// builder produces at a given root precision. Escalates precision when the
/// rounding residual or the propagated error bound exceeds the grid
/// tolerance.
pub fn realize_integer_basis(
    design: &DesignBrackets,
    lattice_builder: &dyn Fn(f64) -> Result<Vec<Vec<Approx>>>,
    policy: &PrecisionPolicy,
) -> Result<Realized> {
    let mut target = policy.initial_target;
    let mut last_err = String::new();
    for attempt in 0..=policy.max_retries {
        let lattice = lattice_builder(target)?;
        match try_round(design, &lattice) {
            Ok(constants) => {
                return Ok(Realized {
                    constants,
                    attempts: attempt + 1,
                })
            }
            Err(e) => last_err = e,
        }
        target *= policy.escalation;
    }
    Err(CoreError::PrecisionFailure(format!(
        "rounding failed after {} attempts: {last_err}",
        policy.max_retries + 1
    )))
}

fn try_round(
    design: &DesignBrackets,
    lattice: &[Vec<Approx>],
) -> std::result::Result<StructureConstants, String> {
    let dim = design.dim;
    assert_eq!(lattice.len(), dim);
    for col in lattice {
        assert_eq!(col.len(), dim);
    }
    let mut centers = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    let mut max_entry_radius = 0.0f64;
    for (j, col) in lattice.iter().enumerate() {
        for (i, a) in col.iter().enumerate() {
            centers[i][j] = a.z;
            max_entry_radius = max_entry_radius.max(a.r);
        }
    }
    let lu = Lu::decompose(&centers).ok_or_else(|| "lattice matrix is singular".to_string())?;
    let amplification = lu.inverse_inf_norm();
    let mut sc = StructureConstants::new(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            // Bracket of lattice columns i and j in design coordinates.
            let mut t = vec![Approx::zero(); dim];
            for &(a, b, k, c) in &design.entries {
                let coeff = lattice[i][a]
                    .mul(lattice[j][b])
                    .sub(lattice[i][b].mul(lattice[j][a]));
                let scaled = coeff.mul(Approx::exact(c as f64));
                t[k] = t[k].add(scaled);
            }
            let rhs: Vec<Complex64> = t.iter().map(|a| a.z).collect();
            let rhs_radius = t.iter().map(|a| a.r).fold(0.0f64, f64::max);
            let x = lu.solve(&rhs);
            let x_norm = x.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
            let err_bound =
                amplification * (rhs_radius + (dim as f64) * max_entry_radius * x_norm.max(1.0));
            if err_bound > ROUND_TOLERANCE {
                return Err(format!(
                    "propagated error bound {err_bound:.3e} above {ROUND_TOLERANCE}"
                ));
            }
            for (k, value) in x.iter().enumerate() {
                let nearest = value.re.round();
                let residual = (value.re - nearest).abs().max(value.im.abs());
                if residual > ROUND_TOLERANCE {
                    return Err(format!(
                        "constant c[{i},{j}]^{k} = {value} is {residual:.3e} from the grid"
                    ));
                }
                if nearest != 0.0 {
                    sc.set(
                        i,
                        j,
                        k,
                        BigRational::from_integer(BigInt::from(nearest as i64)),
                    );
                }
            }
        }
    }
    Ok(sc)
}

/// Dense complex LU with partial pivoting; dimensions stay tiny.
struct Lu {
    n: usize,
    lu: Vec<Vec<Complex64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn decompose(a: &[Vec<Complex64>]) -> Option<Lu> {
        let n = a.len();
        let mut lu: Vec<Vec<Complex64>> = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (pivot_row, pivot_norm) = (k..n)
                .map(|r| (r, lu[r][k].norm()))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())?;
            if pivot_norm < 1e-250 {
                return None;
            }
            lu.swap(k, pivot_row);
            perm.swap(k, pivot_row);
            let pivot = lu[k][k];
            for r in (k + 1)..n {
                let factor = lu[r][k] / pivot;
                lu[r][k] = factor;
                for c in (k + 1)..n {
                    let sub = factor * lu[k][c];
                    lu[r][c] -= sub;
                }
            }
        }
        Some(Lu { n, lu, perm })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = b[self.perm[i]];
            for j in 0..i {
                acc -= self.lu[i][j] * y[j];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc -= self.lu[i][j] * y[j];
            }
            y[i] = acc / self.lu[i][i];
        }
        y
    }

    fn inverse_inf_norm(&self) -> f64 {
        let n = self.n;
        let mut row_sums = vec![0.0f64; n];
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e);
            e[j] = Complex64::new(0.0, 0.0);
            for (i, v) in col.iter().enumerate() {
                row_sums[i] += v.norm();
            }
        }
        row_sums.into_iter().fold(0.0, f64::max)
    }
}
