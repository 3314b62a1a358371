//! Exact structure-constant algebra: brackets, Jacobi, central series and
//! type, automorphism verification, quotients, direct sums, and the
//! basis-aligned decomposition search.

use crate::error::{CoreError, Result};
use crate::matrix::IntMatrix;
use crate::qlinalg::{kernel_basis, qvec_is_zero, qvec_unit, qvec_zero, QVec, Span};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    X,
    Y,
    Z,
    V,
    W,
    U,
}

impl Role {
    fn as_char(self) -> char {
        match self {
            Role::X => 'X',
            Role::Y => 'Y',
            Role::Z => 'Z',
            Role::V => 'V',
            Role::W => 'W',
            Role::U => 'U',
        }
    }
}

/// Basis labels in the style the bracket tables use: a role letter, small
/// integer indices, and an optional copy number for doubled constructions.
/// Rendered as "Y1", "X(1,2)", "Z-1", "W1#2".
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub role: Role,
    pub indices: Vec<i32>,
    pub copy: Option<u32>,
}

impl BasisLabel {
    pub fn new(role: Role, indices: &[i32]) -> Self {
        BasisLabel {
            role,
            indices: indices.to_vec(),
            copy: None,
        }
    }

    pub fn with_copy(role: Role, indices: &[i32], copy: u32) -> Self {
        BasisLabel {
            role,
            indices: indices.to_vec(),
            copy: Some(copy),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.role.as_char())?;
        match self.indices.len() {
            0 => {}
            1 => write!(out, "{}", self.indices[0])?,
            _ => {
                let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
                write!(out, "({})", parts.join(","))?;
            }
        }
        if let Some(c) = self.copy {
            write!(out, "#{c}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisLabel {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<BasisLabel> {
        let bad = || CoreError::Parse(format!("bad basis label {s:?}"));
        let mut chars = s.chars();
        let role = match chars.next() {
            Some('X') => Role::X,
            Some('Y') => Role::Y,
            Some('Z') => Role::Z,
            Some('V') => Role::V,
            Some('W') => Role::W,
            Some('U') => Role::U,
            _ => return Err(bad()),
        };
        let rest: String = chars.collect();
        let (body, copy) = match rest.split_once('#') {
            Some((b, c)) => (b.to_string(), Some(c.parse::<u32>().map_err(|_| bad())?)),
            None => (rest, None),
        };
        let indices = if body.is_empty() {
            Vec::new()
        } else if let Some(inner) = body.strip_prefix('(') {
            let inner = inner.strip_suffix(')').ok_or_else(bad)?;
            inner
                .split(',')
                .map(|t| t.trim().parse::<i32>().map_err(|_| bad()))
                .collect::<std::result::Result<Vec<_>, _>>()?
        } else {
            vec![body.parse::<i32>().map_err(|_| bad())?]
        };
        Ok(BasisLabel {
            role,
            indices,
            copy,
        })
    }
}

/// Sparse antisymmetric structure constants; only pairs i < j are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StructureConstants {
    pub dim: usize,
    entries: BTreeMap<(usize, usize), Vec<(usize, BigRational)>>,
}

impl StructureConstants {
    pub fn new(dim: usize) -> Self {
        StructureConstants {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Canonicalizes raw (i, j, k, c) entries to i < j storage; inconsistent
    /// duplicate orientations are rejected.
    pub fn from_entries(
        dim: usize,
        raw: &[(usize, usize, usize, BigRational)],
    ) -> Result<StructureConstants> {
        let mut seen: BTreeMap<(usize, usize, usize), BigRational> = BTreeMap::new();
        for (i, j, k, c) in raw.iter().cloned() {
            if i >= dim || j >= dim || k >= dim {
                return Err(CoreError::InvalidInput(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(CoreError::InvalidInput(format!(
                        "nonzero bracket [e_{i}, e_{i}]"
                    )));
                }
                continue;
            }
            let (key, val) = if i < j {
                ((i, j, k), c)
            } else {
                ((j, i, k), -c)
            };
            if let Some(prev) = seen.get(&key) {
                if *prev != val {
                    return Err(CoreError::InvalidInput(format!(
                        "inconsistent antisymmetric pair at ({i},{j},{k})"
                    )));
                }
            } else {
                seen.insert(key, val);
            }
        }
        let mut sc = StructureConstants::new(dim);
        for ((i, j, k), c) in seen {
            if !c.is_zero() {
                sc.entries.entry((i, j)).or_default().push((k, c));
            }
        }
        Ok(sc)
    }

    pub fn set_int(&mut self, i: usize, j: usize, k: usize, c: i64) {
        self.set(i, j, k, BigRational::from_integer(BigInt::from(c)));
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: BigRational) {
        assert!(i < j, "store canonical i < j entries");
        assert!(j < self.dim && k < self.dim, "index out of range");
        if c.is_zero() {
            return;
        }
        let v = self.entries.entry((i, j)).or_default();
        match v.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, existing)) => *existing = c,
            None => {
                v.push((k, c));
                v.sort_by_key(|(kk, _)| *kk);
            }
        }
    }

    /// [e_i, e_j] as a sparse vector, honoring antisymmetry.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, BigRational)> {
        if i == j {
            return Vec::new();
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.entries.get(&(a, b)) {
            None => Vec::new(),
            Some(v) => v
                .iter()
                .map(|(k, c)| (*k, if flip { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn iter_canonical(
        &self,
    ) -> impl Iterator<Item = (usize, usize, &Vec<(usize, BigRational)>)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.values().map(|v| v.len()).sum()
    }

    /// All entries as sorted (i, j, k, c) rows, i < j.
    pub fn to_rows(&self) -> Vec<(usize, usize, usize, BigRational)> {
        let mut rows = Vec::new();
        for (i, j, v) in self.iter_canonical() {
            for (k, c) in v {
                rows.push((i, j, *k, c.clone()));
            }
        }
        rows
    }
}

/// A nilpotent Lie algebra with labeled basis and a declared grading.
/// Construction verifies the Jacobi identity and nilpotency exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentLieAlgebra {
    pub constants: StructureConstants,
    pub labels: Vec<BasisLabel>,
    /// 1-based layer per basis index.
    pub layer_of: Vec<usize>,
}

impl NilpotentLieAlgebra {
    pub fn new(
        constants: StructureConstants,
        labels: Vec<BasisLabel>,
        layer_of: Vec<usize>,
    ) -> Result<Self> {
        let dim = constants.dim;
        if labels.len() != dim || layer_of.len() != dim {
            return Err(CoreError::InvalidInput(format!(
                "labels/layers length mismatch for dim {dim}"
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != dim {
            return Err(CoreError::InvalidInput("duplicate basis labels".into()));
        }
        let defect = jacobi_defect(&constants);
        if !defect.is_zero() {
            return Err(CoreError::InvalidInput(format!(
                "Jacobi defect {defect} is nonzero"
            )));
        }
        let alg = NilpotentLieAlgebra {
            constants,
            labels,
            layer_of,
        };
        lower_central_series(&alg)?; // errors when not nilpotent
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.constants.dim
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn step(&self) -> usize {
        *self.layer_of.iter().max().unwrap_or(&1)
    }

    /// The 3-dimensional Heisenberg algebra, [X1, Y1] = Z1.
    pub fn heisenberg3() -> Self {
        let mut sc = StructureConstants::new(3);
        sc.set_int(0, 1, 2, 1);
        NilpotentLieAlgebra::new(
            sc,
            vec![
                BasisLabel::new(Role::X, &[1]),
                BasisLabel::new(Role::Y, &[1]),
                BasisLabel::new(Role::Z, &[1]),
            ],
            vec![1, 1, 2],
        )
        .expect("Heisenberg data is consistent")
    }

    /// The abelian algebra of the given dimension (generic X labels).
    pub fn abelian(dim: usize) -> Self {
        NilpotentLieAlgebra::new(
            StructureConstants::new(dim),
            (0..dim)
                .map(|i| BasisLabel::new(Role::X, &[i as i32 + 1]))
                .collect(),
            vec![1; dim],
        )
        .expect("abelian data is consistent")
    }
}

/// Bilinear antisymmetric extension of the structure constants.
pub fn bracket(alg: &NilpotentLieAlgebra, x: &QVec, y: &QVec) -> Result<QVec> {
    let dim = alg.dim();
    if x.len() != dim || y.len() != dim {
        return Err(CoreError::InvalidInput(format!(
            "bracket operands must have length {dim}"
        )));
    }
    let mut out = qvec_zero(dim);
    for (i, j, v) in alg.constants.iter_canonical() {
        let coeff = &x[i] * &y[j] - &x[j] * &y[i];
        if coeff.is_zero() {
            continue;
        }
        for (k, c) in v {
            out[*k] += &coeff * c;
        }
    }
    Ok(out)
}

/// Max-norm of the worst Jacobi sum over basis triples; zero iff the
/// constants define a Lie algebra.
pub fn jacobi_defect(constants: &StructureConstants) -> BigRational {
    let dim = constants.dim;
    let mut worst = BigRational::zero();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let bij = constants.basis_bracket(i, j);
            for k in (j + 1)..dim {
                let mut sum = qvec_zero(dim);
                accumulate_double_bracket(constants, &bij, k, &mut sum);
                let bjk = constants.basis_bracket(j, k);
                accumulate_double_bracket(constants, &bjk, i, &mut sum);
                let bki = constants.basis_bracket(k, i);
                accumulate_double_bracket(constants, &bki, j, &mut sum);
                for c in &sum {
                    let a = c.abs();
                    if a > worst {
                        worst = a;
                    }
                }
            }
        }
    }
    // Triples with repeated indices vanish identically by antisymmetry, and
    // the Jacobi sum is alternating in (i, j, k), so i < j < k covers all.
    worst
}

fn accumulate_double_bracket(
    constants: &StructureConstants,
    inner: &[(usize, BigRational)],
    outer: usize,
    sum: &mut QVec,
) {
    for (m, c) in inner {
        for (k, d) in constants.basis_bracket(*m, outer) {
            sum[k] += c * &d;
        }
    }
}

/// Spans of the lower central series C^0 = g, C^{i+1} = [g, C^i], until zero.
pub fn central_series_spans(alg: &NilpotentLieAlgebra) -> Result<Vec<Span>> {
    let dim = alg.dim();
    let mut spans = Vec::new();
    let mut current = Span::from_rows(dim, (0..dim).map(|i| qvec_unit(dim, i)));
    loop {
        let mut next = Span::new(dim);
        for row in current.rows() {
            for a in 0..dim {
                let ea = qvec_unit(dim, a);
                let br = bracket(alg, &ea, row)?;
                if !qvec_is_zero(&br) {
                    next.insert(br);
                }
            }
        }
        if next.rank() == current.rank() && next.rank() > 0 {
            return Err(CoreError::NotNilpotent(format!(
                "lower central series stalls at dimension {}",
                next.rank()
            )));
        }
        spans.push(current);
        if next.rank() == 0 {
            spans.push(next);
            return Ok(spans);
        }
        current = next;
    }
}

/// Dimensions of the lower central series C^0 >= C^1 >= ... >= 0.
pub fn lower_central_series(alg: &NilpotentLieAlgebra) -> Result<Vec<usize>> {
    Ok(central_series_spans(alg)?
        .iter()
        .map(|s| s.rank())
        .collect())
}

/// The type (n_1, ..., n_r): successive quotient dimensions of the series.
pub fn type_of(alg: &NilpotentLieAlgebra) -> Result<Vec<usize>> {
    let dims = lower_central_series(alg)?;
    Ok(dims.windows(2).map(|w| w[0] - w[1]).collect())
}

pub fn center(alg: &NilpotentLieAlgebra) -> Span {
    let dim = alg.dim();
    let mut equations = Vec::new();
    // x in center iff for all a, k: sum_j x_j c_{a j}^k = 0.
    for a in 0..dim {
        let mut rows = vec![qvec_zero(dim); dim]; // one per k
        for j in 0..dim {
            for (k, c) in alg.constants.basis_bracket(a, j) {
                rows[k][j] += c;
            }
        }
        equations.extend(rows.into_iter().filter(|r| !qvec_is_zero(r)));
    }
    Span::from_rows(dim, kernel_basis(dim, &equations))
}

pub fn derived_subalgebra(alg: &NilpotentLieAlgebra) -> Span {
    let dim = alg.dim();
    let mut span = Span::new(dim);
    for (i, j, v) in alg.constants.iter_canonical() {
        let _ = (i, j);
        let mut vec = qvec_zero(dim);
        for (k, c) in v {
            vec[*k] = c.clone();
        }
        span.insert(vec);
    }
    span
}

/// Exact test that M [e_i, e_j] = [M e_i, M e_j] for all pairs.
pub fn verify_automorphism(alg: &NilpotentLieAlgebra, m: &IntMatrix) -> Result<bool> {
    let dim = alg.dim();
    if m.n != dim {
        return Err(CoreError::InvalidInput(format!(
            "matrix size {} does not match dim {dim}",
            m.n
        )));
    }
    let cols: Vec<QVec> = (0..dim)
        .map(|j| {
            (0..dim)
                .map(|i| BigRational::from_integer(m[(i, j)].clone()))
                .collect()
        })
        .collect();
    for (i, j, v) in alg.constants.iter_canonical() {
        let lhs = bracket(alg, &cols[i], &cols[j])?;
        let mut rhs = qvec_zero(dim);
        for (k, c) in v {
            for (r, entry) in cols[*k].iter().enumerate() {
                rhs[r] += c * entry;
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    // Pairs without stored entries still constrain the map: [M e_i, M e_j]
    // must vanish wherever [e_i, e_j] does.
    for i in 0..dim {
        for j in (i + 1)..dim {
            if alg.constants.basis_bracket(i, j).is_empty() {
                let lhs = bracket(alg, &cols[i], &cols[j])?;
                if !qvec_is_zero(&lhs) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Drops the last declared layer and every bracket into it.
pub fn quotient_by_last_layer(alg: &NilpotentLieAlgebra) -> Result<NilpotentLieAlgebra> {
    let step = alg.step();
    if step < 2 {
        return Err(CoreError::InvalidInput(
            "quotient_by_last_layer needs at least two layers".into(),
        ));
    }
    let keep: Vec<usize> = (0..alg.dim()).filter(|&i| alg.layer_of[i] < step).collect();
    let reindex: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let mut sc = StructureConstants::new(keep.len());
    for (i, j, v) in alg.constants.iter_canonical() {
        let (Some(&ni), Some(&nj)) = (reindex.get(&i), reindex.get(&j)) else {
            continue;
        };
        for (k, c) in v {
            if let Some(&nk) = reindex.get(k) {
                sc.set(ni, nj, nk, c.clone());
            }
        }
    }
    NilpotentLieAlgebra::new(
        sc,
        keep.iter().map(|&i| alg.labels[i].clone()).collect(),
        keep.iter().map(|&i| alg.layer_of[i]).collect(),
    )
}

/// Block concatenation; labels of the second summand get a bumped copy number
/// when they would collide.
pub fn direct_sum(a: &NilpotentLieAlgebra, b: &NilpotentLieAlgebra) -> NilpotentLieAlgebra {
    let dim = a.dim() + b.dim();
    let mut sc = StructureConstants::new(dim);
    for (i, j, v) in a.constants.iter_canonical() {
        for (k, c) in v {
            sc.set(i, j, *k, c.clone());
        }
    }
    let off = a.dim();
    for (i, j, v) in b.constants.iter_canonical() {
        for (k, c) in v {
            sc.set(off + i, off + j, off + *k, c.clone());
        }
    }
    let mut labels = a.labels.clone();
    for l in &b.labels {
        let mut l = l.clone();
        while labels.contains(&l) {
            l.copy = Some(l.copy.unwrap_or(1) + 1);
        }
        labels.push(l);
    }
    let mut layers = a.layer_of.clone();
    layers.extend_from_slice(&b.layer_of);
    NilpotentLieAlgebra::new(sc, labels, layers).expect("direct sum of Lie algebras is Lie")
}

pub const DECOMPOSITION_DIM_LIMIT: usize = 24;

/// Exhaustive search over 2-part basis partitions for complementary nonzero
/// ideals. A None answer refutes only basis-aligned decompositions.
pub fn basis_aligned_decomposition(
    alg: &NilpotentLieAlgebra,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let dim = alg.dim();
    if dim > DECOMPOSITION_DIM_LIMIT {
        return Err(CoreError::ScopeExceeded(format!(
            "basis-aligned decomposition search supports dim <= {DECOMPOSITION_DIM_LIMIT}, got {dim}"
        )));
    }
    if dim < 2 {
        return Ok(None);
    }
    // Precompute bracket targets as bitmasks.
    let mut table: Vec<(u32, u32, u32)> = Vec::new(); // (bit i, bit j, target mask)
    for (i, j, v) in alg.constants.iter_canonical() {
        let mut mask = 0u32;
        for (k, _) in v {
            mask |= 1 << k;
        }
        table.push((1 << i, 1 << j, mask));
    }
    // Both parts must meet the center when the center is coordinate-spanned.
    let center_span = center(alg);
    let center_mask: u32 = if center_span.rank() == center_span.coordinate_members().len() {
        center_span
            .coordinate_members()
            .iter()
            .fold(0u32, |m, &i| m | 1 << i)
    } else {
        0 // not coordinate-aligned: skip the pruning
    };
    let full: u32 = if dim == 32 { u32::MAX } else { (1 << dim) - 1 };
    // Index 0 stays in the first part; enumerate the rest.
    let count: u32 = 1 << (dim - 1);
    for m in 0..count {
        let s: u32 = (m << 1) | 1;
        let t: u32 = full & !s;
        if t == 0 {
            continue;
        }
        if center_mask != 0 && ((s & center_mask) == 0 || (t & center_mask) == 0) {
            continue;
        }
        let mut ok = true;
        for &(bi, bj, targets) in &table {
            let i_in_s = bi & s != 0;
            let j_in_s = bj & s != 0;
            if i_in_s && j_in_s {
                if targets & !s != 0 {
                    ok = false;
                    break;
                }
            } else if !i_in_s && !j_in_s {
                if targets & !t != 0 {
                    ok = false;
                    break;
                }
            } else {
                // mixed pair must bracket to zero
                ok = false;
                break;
            }
        }
        if ok {
            let part_s: Vec<usize> = (0..dim).filter(|&i| s & (1 << i) != 0).collect();
            let part_t: Vec<usize> = (0..dim).filter(|&i| t & (1 << i) != 0).collect();
            return Ok(Some((part_s, part_t)));
        }
    }
    Ok(None)
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
    fn heisenberg_bracket() {
        let h = NilpotentLieAlgebra::heisenberg3();
        let br = bracket(&h, &q(&[1, 0, 0]), &q(&[0, 1, 0])).unwrap();
        assert_eq!(br, q(&[0, 0, 1]));
        let same = bracket(&h, &q(&[1, 2, 3]), &q(&[1, 2, 3])).unwrap();
        assert!(qvec_is_zero(&same));
        assert!(bracket(&h, &q(&[1, 0]), &q(&[0, 1, 0])).is_err());
    }

    #[test]
    fn heisenberg_invariants() {
        let h = NilpotentLieAlgebra::heisenberg3();
        assert_eq!(type_of(&h).unwrap(), vec![2, 1]);
        let c = center(&h);
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&q(&[0, 0, 1])));
        let d = derived_subalgebra(&h);
        assert!(c.equals(&d));
    }

    #[test]
    fn abelian_extremes() {
        let a = NilpotentLieAlgebra::abelian(2);
        assert_eq!(type_of(&a).unwrap(), vec![2]);
        assert_eq!(center(&a).rank(), 2);
        assert_eq!(derived_subalgebra(&a).rank(), 0);
    }

    #[test]
    fn canonicalization_rejects_inconsistent_pairs() {
        let two = BigRational::from_integer(BigInt::from(2));
        let mone = BigRational::from_integer(BigInt::from(-1));
        let raw = vec![
            (0usize, 1usize, 2usize, two),
            (1usize, 0usize, 2usize, mone),
        ];
        assert!(StructureConstants::from_entries(3, &raw).is_err());
    }

    #[test]
    fn defect_detects_non_jacobi_table() {
        // [e1,e2] = e3, [e1,e3] = e1 violates Jacobi with defect 1.
        let mut sc = StructureConstants::new(3);
        sc.set_int(0, 1, 2, 1);
        sc.set_int(0, 2, 0, 1);
        assert_eq!(
            jacobi_defect(&sc),
            BigRational::from_integer(BigInt::from(1))
        );
    }

    #[test]
    fn jacobi_ok_but_not_nilpotent() {
        // [e1,e2] = e3, [e1,e3] = e2 satisfies Jacobi but is not nilpotent.
        let mut sc = StructureConstants::new(3);
        sc.set_int(0, 1, 2, 1);
        sc.set_int(0, 2, 1, 1);
        assert!(jacobi_defect(&sc).is_zero());
        let alg = NilpotentLieAlgebra::new(
            sc,
            vec![
                BasisLabel::new(Role::X, &[1]),
                BasisLabel::new(Role::X, &[2]),
                BasisLabel::new(Role::X, &[3]),
            ],
            vec![1, 1, 1],
        );
        assert!(matches!(alg, Err(CoreError::NotNilpotent(_))));
    }

    #[test]
    fn identity_is_automorphism() {
        let h = NilpotentLieAlgebra::heisenberg3();
        assert!(verify_automorphism(&h, &IntMatrix::identity(3)).unwrap());
        // Negating one first-layer basis vector breaks equivariance.
        let mut m = IntMatrix::identity(3);
        m[(0, 0)] = BigInt::from(-1);
        assert!(!verify_automorphism(&h, &m).unwrap());
        assert!(matches!(
            verify_automorphism(&h, &IntMatrix::identity(4)),
            Err(CoreError::InvalidInput(_))
        ));
    }

    #[test]
    fn quotient_of_heisenberg_is_abelian_plane() {
        let h = NilpotentLieAlgebra::heisenberg3();
        let quo = quotient_by_last_layer(&h).unwrap();
        assert_eq!(quo.dim(), 2);
        assert_eq!(type_of(&quo).unwrap(), vec![2]);
        assert!(quotient_by_last_layer(&NilpotentLieAlgebra::abelian(2)).is_err());
    }

    #[test]
    fn direct_sum_and_decomposition() {
        let h = NilpotentLieAlgebra::heisenberg3();
        let hh = direct_sum(&h, &h);
        assert_eq!(hh.dim(), 6);
        assert_eq!(type_of(&hh).unwrap(), vec![4, 2]);
        let (s, t) = basis_aligned_decomposition(&hh).unwrap().unwrap();
        assert_eq!(s, vec![0, 1, 2]);
        assert_eq!(t, vec![3, 4, 5]);
        assert!(basis_aligned_decomposition(&h).unwrap().is_none());
    }

    #[test]
    fn direct_sums_always_split() {
        let h = NilpotentLieAlgebra::heisenberg3();
        let cases = [
            direct_sum(&h, &NilpotentLieAlgebra::abelian(1)),
            direct_sum(&NilpotentLieAlgebra::abelian(2), &h),
            direct_sum(
                &NilpotentLieAlgebra::abelian(1),
                &NilpotentLieAlgebra::abelian(1),
            ),
        ];
        for alg in &cases {
            assert!(basis_aligned_decomposition(alg).unwrap().is_some());
        }
    }

    #[test]
    fn direct_sum_with_zero_dim_is_identity() {
        let h = NilpotentLieAlgebra::heisenberg3();
        let same = direct_sum(&h, &NilpotentLieAlgebra::abelian(0));
        assert_eq!(same.dim(), 3);
        assert_eq!(same.constants, h.constants);
        assert_eq!(same.labels, h.labels);
    }

    #[test]
    fn decomposition_scope_cap() {
        let a = NilpotentLieAlgebra::abelian(25);
        assert!(matches!(
            basis_aligned_decomposition(&a),
            Err(CoreError::ScopeExceeded(_))
        ));
    }

    #[test]
    fn label_roundtrip() {
        for s in ["X(1,2)", "Y1", "Z-1", "W1#2", "U0", "X(0,1,1)#3"] {
            let l: BasisLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("Q1".parse::<BasisLabel>().is_err());
        assert!("X(1".parse::<BasisLabel>().is_err());
    }
}
