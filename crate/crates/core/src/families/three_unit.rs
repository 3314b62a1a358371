//! Three-unit constructions: the merged two-step algebra of type
//! (pqr+q+r, pr+pq) and its three-step extension of type (pqr+q+r, pr+pq, p).
//! The two-step basis ordering matches the three-step one minus the last
//! layer, so the quotient is labelwise identical to the two-step build.

use super::realize::{realize_integer_basis, DesignBrackets, PrecisionPolicy, Realized};
use super::{family_words, finish_certificate, FamilyKind, FamilyParams};
use crate::cert::AnosovCertificate;
use crate::error::Result;
use crate::lie::{BasisLabel, NilpotentLieAlgebra, Role, StructureConstants};
use crate::matrix::IntMatrix;
use crate::poly::{complex_roots, composed_product, power_sum, reciprocal, Approx, IntPolynomial};
use crate::units::{make_unit, validate_system};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Copy)]
struct Layout {
    p: usize,
    q: usize,
    r: usize,
    three_step: bool,
}

impl Layout {
    fn x(&self, m: usize, l: usize, s: usize) -> usize {
        m + self.p * (l + self.q * s)
    }
    fn y(&self, t: usize) -> usize {
        self.p * self.q * self.r + t
    }
    fn z(&self, t: usize) -> usize {
        self.p * self.q * self.r + self.q + t
    }
    fn v(&self, m: usize, s: usize) -> usize {
        self.p * self.q * self.r + self.q + self.r + m + self.p * s
    }
    fn w(&self, m: usize, l: usize) -> usize {
        self.p * self.q * self.r + self.q + self.r + self.p * self.r + m + self.p * l
    }
    fn u(&self, m: usize) -> usize {
        self.p * self.q * self.r + self.q + self.r + self.p * self.r + self.p * self.q + m
    }
    fn dim(&self) -> usize {
        let base = self.p * self.q * self.r + self.q + self.r + self.p * self.r + self.p * self.q;
        if self.three_step {
            base + self.p
        } else {
            base
        }
    }
}

fn closed_form_constants(
    lay: &Layout,
    g: &IntPolynomial,
    h: &IntPolynomial,
) -> Result<StructureConstants> {
    let mut sc = StructureConstants::new(lay.dim());
    let set = |sc: &mut StructureConstants, i: usize, j: usize, k: usize, c: BigInt| {
        if !c.is_zero() {
            sc.set(i, j, k, BigRational::from_integer(c));
        }
    };
    for m in 0..lay.p {
        for l in 0..lay.q {
            for s in 0..lay.r {
                for t in 0..lay.q {
                    // [X(m,l,s), Y_t] = p_{l-t}(g) V(m,s)
                    let c = power_sum(g, l as i64 - t as i64)?;
                    set(&mut sc, lay.x(m, l, s), lay.y(t), lay.v(m, s), c);
                }
                for t in 0..lay.r {
                    // [X(m,l,s), Z_t] = p_{s-t}(h) W(m,l)
                    let c = power_sum(h, s as i64 - t as i64)?;
                    set(&mut sc, lay.x(m, l, s), lay.z(t), lay.w(m, l), c);
                }
            }
        }
    }
    if lay.three_step {
        for t in 0..lay.r {
            for m in 0..lay.p {
                for s in 0..lay.r {
                    // [Z_t, V(m,s)] = p_{s-t}(h) U_m
                    let c = power_sum(h, s as i64 - t as i64)?;
                    set(&mut sc, lay.z(t), lay.v(m, s), lay.u(m), c);
                }
            }
        }
        for t in 0..lay.q {
            for m in 0..lay.p {
                for l in 0..lay.q {
                    // [Y_t, W(m,l)] = p_{l-t}(g) U_m
                    let c = power_sum(g, l as i64 - t as i64)?;
                    set(&mut sc, lay.y(t), lay.w(m, l), lay.u(m), c);
                }
            }
        }
    }
    Ok(sc)
}

fn labels_and_layers(lay: &Layout) -> (Vec<BasisLabel>, Vec<usize>) {
    let mut labels = Vec::with_capacity(lay.dim());
    let mut layers = Vec::with_capacity(lay.dim());
    for s in 0..lay.r {
        for l in 0..lay.q {
            for m in 0..lay.p {
                labels.push(BasisLabel::new(Role::X, &[m as i32, l as i32, s as i32]));
                layers.push(1);
            }
        }
    }
    for t in 0..lay.q {
        labels.push(BasisLabel::new(Role::Y, &[t as i32]));
        layers.push(1);
    }
    for t in 0..lay.r {
        labels.push(BasisLabel::new(Role::Z, &[t as i32]));
        layers.push(1);
    }
    for s in 0..lay.r {
        for m in 0..lay.p {
            labels.push(BasisLabel::new(Role::V, &[m as i32, s as i32]));
            layers.push(2);
        }
    }
    for l in 0..lay.q {
        for m in 0..lay.p {
            labels.push(BasisLabel::new(Role::W, &[m as i32, l as i32]));
            layers.push(2);
        }
    }
    if lay.three_step {
        for m in 0..lay.p {
            labels.push(BasisLabel::new(Role::U, &[m as i32]));
            layers.push(3);
        }
    }
    (labels, layers)
}

fn assemble(
    lay: &Layout,
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
) -> Result<(IntMatrix, Vec<IntPolynomial>)> {
    let cf = IntMatrix::companion(f)?;
    let cg = IntMatrix::companion(g)?;
    let ch = IntMatrix::companion(h)?;
    let mut blocks = vec![
        IntMatrix::kron(&ch, &IntMatrix::kron(&cg, &cf)),
        IntMatrix::companion(&reciprocal(g)?)?,
        IntMatrix::companion(&reciprocal(h)?)?,
        IntMatrix::kron(&ch, &cf),
        IntMatrix::kron(&cg, &cf),
    ];
    let mut factors = vec![
        composed_product(&composed_product(f, g)?, h)?,
        reciprocal(g)?,
        reciprocal(h)?,
        composed_product(f, h)?,
        composed_product(f, g)?,
    ];
    if lay.three_step {
        blocks.push(cf.clone());
        factors.push(f.clone());
    }
    Ok((IntMatrix::block_diag(&blocks), factors))
}

fn build(
    kind: FamilyKind,
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
) -> Result<AnosovCertificate> {
    let uf = make_unit(f)?;
    let ug = make_unit(g)?;
    let uh = make_unit(h)?;
    let (p, q, r) = (uf.degree, ug.degree, uh.degree);
    let system = validate_system(&[uf, ug, uh], &family_words(kind))?;
    let lay = Layout {
        p,
        q,
        r,
        three_step: kind == FamilyKind::ThreeUnit3Step,
    };
    let sc = closed_form_constants(&lay, g, h)?;
    let (labels, layers) = labels_and_layers(&lay);
    let algebra = NilpotentLieAlgebra::new(sc, labels, layers)?;
    let (matrix, factors) = assemble(&lay, f, g, h)?;
    finish_certificate(
        kind,
        FamilyParams { p, q, r: Some(r) },
        vec![f.clone(), g.clone(), h.clone()],
        algebra,
        matrix,
        factors,
        system,
    )
}

pub fn build_three_unit_2step(
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
) -> Result<AnosovCertificate> {
    build(FamilyKind::ThreeUnit2Step, f, g, h)
}

pub fn build_three_unit_3step(
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
) -> Result<AnosovCertificate> {
    build(FamilyKind::ThreeUnit3Step, f, g, h)
}

/// Realize-then-round cross-check for either variant.
pub fn three_unit_realized(
    three_step: bool,
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    policy: &PrecisionPolicy,
) -> Result<Realized> {
    let lay = Layout {
        p: f.degree(),
        q: g.degree(),
        r: h.degree(),
        three_step,
    };
    let dim = lay.dim();
    // Design basis mirrors the lattice layout index-for-index.
    let mut design = DesignBrackets::new(dim);
    for i in 0..lay.p {
        for j in 0..lay.q {
            for k in 0..lay.r {
                design.add(lay.x(i, j, k), lay.y(j), lay.v(i, k), 1);
                design.add(lay.x(i, j, k), lay.z(k), lay.w(i, j), 1);
            }
        }
    }
    if three_step {
        for k in 0..lay.r {
            for i in 0..lay.p {
                design.add(lay.z(k), lay.v(i, k), lay.u(i), 1);
            }
        }
        for j in 0..lay.q {
            for i in 0..lay.p {
                design.add(lay.y(j), lay.w(i, j), lay.u(i), 1);
            }
        }
    }
    let (f, g, h) = (f.clone(), g.clone(), h.clone());
    let builder = move |target: f64| -> Result<Vec<Vec<Approx>>> {
        let lam: Vec<Approx> = complex_roots(&f, target)?
            .into_iter()
            .map(Approx::from_root)
            .collect();
        let mu: Vec<Approx> = complex_roots(&g, target)?
            .into_iter()
            .map(Approx::from_root)
            .collect();
        let nu: Vec<Approx> = complex_roots(&h, target)?
            .into_iter()
            .map(Approx::from_root)
            .collect();
        let mut cols = vec![vec![Approx::zero(); dim]; dim];
        for m in 0..lay.p {
            for l in 0..lay.q {
                for s in 0..lay.r {
                    let col = &mut cols[lay.x(m, l, s)];
                    for i in 0..lay.p {
                        for j in 0..lay.q {
                            for k in 0..lay.r {
                                col[lay.x(i, j, k)] = lam[i]
                                    .powi(m as i64)
                                    .mul(mu[j].powi(l as i64))
                                    .mul(nu[k].powi(s as i64));
                            }
                        }
                    }
                }
            }
        }
        for t in 0..lay.q {
            let col = &mut cols[lay.y(t)];
            for j in 0..lay.q {
                col[lay.y(j)] = mu[j].powi(-(t as i64));
            }
        }
        for t in 0..lay.r {
            let col = &mut cols[lay.z(t)];
            for k in 0..lay.r {
                col[lay.z(k)] = nu[k].powi(-(t as i64));
            }
        }
        for m in 0..lay.p {
            for s in 0..lay.r {
                let col = &mut cols[lay.v(m, s)];
                for i in 0..lay.p {
                    for k in 0..lay.r {
                        col[lay.v(i, k)] = lam[i].powi(m as i64).mul(nu[k].powi(s as i64));
                    }
                }
            }
        }
        for m in 0..lay.p {
            for l in 0..lay.q {
                let col = &mut cols[lay.w(m, l)];
                for i in 0..lay.p {
                    for j in 0..lay.q {
                        col[lay.w(i, j)] = lam[i].powi(m as i64).mul(mu[j].powi(l as i64));
                    }
                }
            }
        }
        if lay.three_step {
            for m in 0..lay.p {
                let col = &mut cols[lay.u(m)];
                for i in 0..lay.p {
                    col[lay.u(i)] = lam[i].powi(m as i64);
                }
            }
        }
        Ok(cols)
    };
    realize_integer_basis(&design, &builder, policy)
}
