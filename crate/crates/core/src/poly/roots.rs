//! Simultaneous root approximation (Durand-Kerner / Weierstrass) with
//! a-posteriori error radii from the residual bound.

use super::{squarefree_part, IntPolynomial};
use crate::error::{CoreError, Result};
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// A complex approximation with a covering error radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootApprox {
    pub z: Complex64,
    pub radius: f64,
}

const MAX_ITERATIONS: usize = 600;
const INITIAL_ANGLE_OFFSET: f64 = 0.4;

/// One approximation per distinct root of f (the squarefree part is taken
/// internally), each with radius <= target_error. Deterministic: initial
/// guesses sit on a circle of radius 1 + max|coeff| with a fixed angular
/// offset, and the iteration order is fixed.
pub fn complex_roots(f: &IntPolynomial, target_error: f64) -> Result<Vec<RootApprox>> {
    f.require_monic("complex_roots")?;
    if !(target_error > 0.0) {
        return Err(CoreError::InvalidInput(
            "target_error must be positive".into(),
        ));
    }
    let sf = squarefree_part(f);
    let d = sf.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    let coeffs: Vec<Complex64> = sf
        .coeffs()
        .iter()
        .map(|c| {
            c.to_f64().map(|x| Complex64::new(x, 0.0)).ok_or_else(|| {
                CoreError::PrecisionFailure(format!("coefficient of {sf} does not fit in f64"))
            })
        })
        .collect::<Result<_>>()?;
    let max_coeff = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let radius = 1.0 + max_coeff;

    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + INITIAL_ANGLE_OFFSET;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let eval = |coeffs: &[Complex64], x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };

    // Weierstrass corrections W_i; all roots lie in the union of disks of
    // radius d |W_i| around the current points. Iterate until that certified
    // bound reaches the target, not further, so the radii reflect the
    // requested precision.
    let corrections = |z: &[Complex64]| -> Vec<Complex64> {
        (0..d)
            .map(|i| {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..d {
                    if j != i {
                        let mut diff = z[i] - z[j];
                        if diff.norm() < 1e-300 {
                            diff = Complex64::new(1e-300, 0.0);
                        }
                        denom *= diff;
                    }
                }
                eval(&coeffs, z[i]) / denom
            })
            .collect()
    };
    let mut w = corrections(&z);
    let radius_bound =
        |w: &[Complex64]| (d as f64) * w.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let mut iterations = 0;
    while radius_bound(&w) > target_error {
        if iterations >= MAX_ITERATIONS {
            return Err(CoreError::PrecisionFailure(format!(
                "root finder did not reach {target_error:.3e} on {sf} (worst radius {:.3e})",
                radius_bound(&w)
            )));
        }
        for i in 0..d {
            z[i] -= w[i];
        }
        w = corrections(&z);
        iterations += 1;
    }
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        out.push(RootApprox {
            z: z[i],
            radius: (d as f64) * w[i].norm(),
        });
    }
    // Deterministic presentation order.
    out.sort_by(|a, b| {
        b.z.re
            .partial_cmp(&a.z.re)
            .unwrap()
            .then(b.z.im.partial_cmp(&a.z.im).unwrap())
    });
    Ok(out)
}

/// First-order ball arithmetic used by the realize-then-round engine: centers
/// in f64 complex, radii accumulated through every operation.
#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub z: Complex64,
    pub r: f64,
}

impl Approx {
    pub fn exact(x: f64) -> Self {
        Approx {
            z: Complex64::new(x, 0.0),
            r: 0.0,
        }
    }

    pub fn zero() -> Self {
        Approx::exact(0.0)
    }

    pub fn one() -> Self {
        Approx::exact(1.0)
    }

    pub fn from_root(root: RootApprox) -> Self {
        Approx {
            z: root.z,
            r: root.radius,
        }
    }

    fn slop(z: Complex64) -> f64 {
        4.0 * f64::EPSILON * (z.norm() + 1.0)
    }

    pub fn add(self, other: Approx) -> Approx {
        let z = self.z + other.z;
        Approx {
            z,
            r: self.r + other.r + Self::slop(z),
        }
    }

    pub fn sub(self, other: Approx) -> Approx {
        let z = self.z - other.z;
        Approx {
            z,
            r: self.r + other.r + Self::slop(z),
        }
    }

    pub fn mul(self, other: Approx) -> Approx {
        let z = self.z * other.z;
        let r = self.z.norm() * other.r + other.z.norm() * self.r + self.r * other.r;
        Approx {
            z,
            r: r + Self::slop(z),
        }
    }

    pub fn inv(self) -> Approx {
        let n = self.z.norm();
        let z = Complex64::new(1.0, 0.0) / self.z;
        let denom = (n - self.r).max(1e-300);
        Approx {
            z,
            r: self.r / (n * denom) + Self::slop(z),
        }
    }

    pub fn powi(self, e: i64) -> Approx {
        if e == 0 {
            return Approx::one();
        }
        let base = if e < 0 { self.inv() } else { self };
        let mut acc = Approx::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(base);
        }
        acc
    }
}
