//! Sampled paths in block-diagonal unitary groups and their winding
//! invariants, plus the explicit edge-path construction with prescribed
//! integer windings and the face-loop composition.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::skeleton::Subsimplex;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

pub const DEFAULT_SAMPLES: usize = 1024;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Consecutive det-phase steps must stay below `π − LIFT_MARGIN`.
pub const LIFT_MARGIN: f64 = PI / 4.0;

/// Small dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Permutation matrix `U_g` with `U_g e_i = e_{g(i)}`.
    pub fn permutation(g: &crate::perm::Permutation) -> Self {
        let n = g.n();
        let mut m = Self::zeros(n);
        for i in 1..=n as u8 {
            m[(g.apply(i) as usize - 1, i as usize - 1)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Max absolute entry of `U*U − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod[(i, j)] - expected).norm());
            }
        }
        worst
    }

    /// Max absolute entry outside the blocks of `partition`.
    pub fn off_block_mass(&self, partition: &Partition) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            let bi = partition.block_of(i as u8 + 1);
            for j in 0..self.n {
                if partition.block_of(j as u8 + 1) != bi {
                    worst = worst.max(self[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn max_entry_distance(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Determinant of the submatrix on the 1-based positions in `block`,
    /// by LU with partial pivoting (blocks have size ≤ n).
    pub fn det_block(&self, block: &[u8]) -> Complex64 {
        let k = block.len();
        let mut a = vec![Complex64::new(0.0, 0.0); k * k];
        for (r, &i) in block.iter().enumerate() {
            for (c, &j) in block.iter().enumerate() {
                a[r * k + c] = self[(i as usize - 1, j as usize - 1)];
            }
        }
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..k {
            let pivot = (col..k)
                .max_by(|&x, &y| {
                    a[x * k + col]
                        .norm()
                        .partial_cmp(&a[y * k + col].norm())
                        .unwrap()
                })
                .unwrap();
            if a[pivot * k + col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..k {
                    a.swap(col * k + j, pivot * k + j);
                }
                det = -det;
            }
            det *= a[col * k + col];
            for row in col + 1..k {
                let factor = a[row * k + col] / a[col * k + col];
                for j in col..k {
                    let sub = factor * a[col * k + j];
                    a[row * k + j] -= sub;
                }
            }
        }
        det
    }

    /// Serialization form: row-major `[re, im]` pairs.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.data.iter().map(|z| [z.re, z.im]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// A uniformly sampled path in `U(n)` with a declared block structure.
#[derive(Debug, Clone)]
pub struct BlockUnitaryPath {
    n: usize,
    partition: Partition,
    samples: Vec<CMatrix>,
    tolerance: f64,
}

/// Winding invariants of one block of a path.
#[derive(Debug, Clone, Serialize)]
pub struct WindingReport {
    pub block: Vec<u8>,
    pub w: f64,
    pub uwn: i64,
    pub defect: f64,
}

impl BlockUnitaryPath {
    /// Validates unitarity and block structure of every sample.
    pub fn new(partition: Partition, samples: Vec<CMatrix>, tolerance: f64) -> Result<Self> {
        let n = partition.n();
        if samples.len() < 2 {
            return Err(Error::InvalidInput("a path needs at least 2 samples".into()));
        }
        for (k, s) in samples.iter().enumerate() {
            if s.n() != n {
                return Err(Error::DimensionMismatch {
                    left: s.n(),
                    right: n,
                });
            }
            let u = s.unitarity_defect();
            if u > tolerance {
                return Err(Error::InvalidInput(format!(
                    "sample {k} is not unitary within tolerance: defect {u:.3e}"
                )));
            }
            let b = s.off_block_mass(&partition);
            if b > tolerance {
                return Err(Error::InvalidInput(format!(
                    "sample {k} has off-block mass {b:.3e}"
                )));
            }
        }
        Ok(Self {
            n,
            partition,
            samples,
            tolerance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn samples(&self) -> &[CMatrix] {
        &self.samples
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn start(&self) -> &CMatrix {
        &self.samples[0]
    }

    pub fn end(&self) -> &CMatrix {
        self.samples.last().unwrap()
    }

    /// Winding invariants of the `det_B` image of the path.
    pub fn winding(&self, block: &[u8]) -> Result<WindingReport> {
        if !self.partition.blocks().iter().any(|b| b == block) {
            return Err(Error::InvalidInput(format!(
                "block {block:?} is not a block of the path partition"
            )));
        }
        self.winding_unchecked(block)
    }

    /// Winding on any union of partition blocks (the block-splitting view);
    /// `block` must be a block of some partition coarser than the path's.
    pub fn winding_unchecked(&self, block: &[u8]) -> Result<WindingReport> {
        let mut total = 0.0f64;
        let mut prev = self.samples[0].det_block(block);
        for (k, s) in self.samples.iter().enumerate().skip(1) {
            let cur = s.det_block(block);
            let step = (cur * prev.conj()).arg();
            if step.abs() >= PI - LIFT_MARGIN {
                return Err(Error::LiftingResolution {
                    at: k - 1,
                    next: k,
                    step: step.abs(),
                });
            }
            total += step;
            prev = cur;
        }
        let w = total / (2.0 * PI);
        Ok(WindingReport::from_w(block.to_vec(), w))
    }

    /// Winding of every block of the path partition, in block order.
    pub fn winding_all(&self) -> Result<Vec<WindingReport>> {
        self.partition
            .blocks()
            .iter()
            .map(|b| self.winding(b))
            .collect()
    }

    /// Concatenation; endpoints must match within tolerance.
    pub fn concat(&self, other: &BlockUnitaryPath) -> Result<BlockUnitaryPath> {
        let deviation = self.end().max_entry_distance(other.start());
        let tolerance = self.tolerance.max(other.tolerance);
        if deviation > tolerance {
            return Err(Error::CompositionMismatch {
                deviation,
                tolerance,
            });
        }
        let partition = self.partition.join(&other.partition)?;
        let mut samples = self.samples.clone();
        samples.extend(other.samples.iter().cloned());
        BlockUnitaryPath::new(partition, samples, tolerance)
    }

    /// The reversed path `t ↦ γ(1−t)`.
    pub fn reversed(&self) -> BlockUnitaryPath {
        let mut samples = self.samples.clone();
        samples.reverse();
        BlockUnitaryPath {
            n: self.n,
            partition: self.partition.clone(),
            samples,
            tolerance: self.tolerance,
        }
    }

    /// Pointwise left multiplication by a constant matrix in `U(𝒫)`.
    pub fn left_mul(&self, v: &CMatrix) -> Result<BlockUnitaryPath> {
        let samples = self.samples.iter().map(|s| v.mul(s)).collect();
        BlockUnitaryPath::new(self.partition.clone(), samples, self.tolerance)
    }

    /// Reinterprets the path in a coarser partition.
    pub fn coarsened(&self, coarser: Partition) -> Result<BlockUnitaryPath> {
        if !self.partition.refines(&coarser)? {
            return Err(Error::InvalidInput(
                "target partition is not coarser than the path partition".into(),
            ));
        }
        BlockUnitaryPath::new(coarser, self.samples.clone(), self.tolerance)
    }
}

impl WindingReport {
    fn from_w(block: Vec<u8>, w: f64) -> Self {
        // snap to the nearest integer when w sits numerically on one, so
        // uwn is stable at boundaries
        let nearest = w.round();
        let uwn = if (w - nearest).abs() < 1e-6 {
            nearest as i64
        } else {
            w.ceil() as i64
        };
        Self {
            block,
            w,
            uwn,
            defect: uwn as f64 - w,
        }
    }
}

/// The explicit edge path `γ^{g0,g1}`: starts at the identity, ends at
/// `U_{g0⁻¹g1}`, stays block-diagonal in the edge partition, and realizes
/// the requested upper winding number on every block.
///
/// Per block the cyclic part of `U_{g0⁻¹g1}` is diagonalized (eigenvalues
/// are roots of unity), the principal logarithm drives `exp(t·log)`, and
/// the eigendirection with eigenvalue 1 is twisted by `e^{2πikt}` to shift
/// the winding without moving the endpoints.
pub fn edge_path(
    edge: &Subsimplex,
    target_uwn: &[i64],
    num_samples: usize,
) -> Result<BlockUnitaryPath> {
    if edge.dim() != 1 {
        return Err(Error::InvalidInput("edge_path needs a dim-1 subsimplex".into()));
    }
    let n = edge.n();
    let partition = edge.partition();
    if target_uwn.len() != partition.len() {
        return Err(Error::DimensionMismatch {
            left: target_uwn.len(),
            right: partition.len(),
        });
    }
    if num_samples < 2 {
        return Err(Error::InvalidInput("need at least 2 samples".into()));
    }
    let h = edge.vertices()[0]
        .inverse()
        .compose(&edge.vertices()[1])
        .expect("same n");

    // per block: cycle order and eigen-phases (with the winding twist)
    struct BlockSpec {
        cycle: Vec<u8>,
        phases: Vec<f64>,
    }
    let mut specs = Vec::new();
    for (block, &target) in partition.blocks().iter().zip(target_uwn) {
        let k = block.len();
        let mut cycle = vec![block[0]];
        while cycle.len() < k {
            let next = h.apply(*cycle.last().unwrap());
            cycle.push(next);
        }
        let mut phases: Vec<f64> = (0..k)
            .map(|j| {
                let angle = 2.0 * PI * j as f64 / k as f64;
                if angle > PI + 1e-12 {
                    angle - 2.0 * PI
                } else {
                    angle
                }
            })
            .collect();
        let base_uwn = if k % 2 == 0 { 1 } else { 0 };
        // eigenvalue 1 direction carries the integer twist
        phases[0] += 2.0 * PI * (target - base_uwn) as f64;

        let det_step = phases.iter().sum::<f64>().abs() / (num_samples as f64);
        if det_step >= PI - LIFT_MARGIN {
            return Err(Error::LiftingResolution {
                at: 0,
                next: 1,
                step: det_step,
            });
        }
        specs.push(BlockSpec {
            cycle,
            phases,
        });
    }

    let mut samples = Vec::with_capacity(num_samples + 1);
    for s in 0..=num_samples {
        let t = s as f64 / num_samples as f64;
        let mut u = CMatrix::zeros(n);
        for spec in &specs {
            let k = spec.cycle.len();
            // U_B(t)[c][c'] = (1/k) Σ_j e^{i t φ_j} ω^{-j(c - c')}
            for (c, &row_elem) in spec.cycle.iter().enumerate() {
                for (cp, &col_elem) in spec.cycle.iter().enumerate() {
                    let mut entry = Complex64::new(0.0, 0.0);
                    for (j, &phase) in spec.phases.iter().enumerate() {
                        let fourier =
                            -2.0 * PI * (j as f64) * ((c as f64) - (cp as f64)) / (k as f64);
                        entry += Complex64::from_polar(1.0 / k as f64, t * phase + fourier);
                    }
                    u[(row_elem as usize - 1, col_elem as usize - 1)] = entry;
                }
            }
        }
        samples.push(u);
    }
    BlockUnitaryPath::new(partition, samples, DEFAULT_TOLERANCE)
}

/// The loop `γ^{g0,g1} ∗ (U_{g0⁻¹g1} γ^{g1,g2}) ∗ (γ^{g0,g2})⁻¹` around a
/// 2-face, reinterpreted in the face partition.
pub fn face_loop(
    face: &Subsimplex,
    edge01: &BlockUnitaryPath,
    edge12: &BlockUnitaryPath,
    edge02: &BlockUnitaryPath,
) -> Result<BlockUnitaryPath> {
    if face.dim() != 2 {
        return Err(Error::InvalidInput("face_loop needs a dim-2 subsimplex".into()));
    }
    let g01 = face.vertices()[0]
        .inverse()
        .compose(&face.vertices()[1])
        .expect("same n");
    // each leg is block-diagonal in its own edge partition, which refines
    // the face partition; the left-shifted middle leg only lives in the
    // latter, so coarsen everything first
    let coarse = face.partition();
    let first = edge01.coarsened(coarse.clone())?;
    let middle = edge12
        .coarsened(coarse.clone())?
        .left_mul(&CMatrix::permutation(&g01))?;
    let last = edge02.coarsened(coarse)?.reversed();
    first.concat(&middle)?.concat(&last)
}

/// Numerically replays the diagonal-correction argument: given per-vertex
/// values `u(g) = U_g·exp(iT_g)` of a weakly admissible map, applies
/// `v(x) = exp(−i Σ x_g T_g)` along every edge of the 1-skeleton and checks
/// that the corrected map hits `U_g` at the vertices and keeps the edge
/// block structure.
pub fn validate_weak_to_admissible(
    vertex_values: &BTreeMap<crate::perm::Permutation, CMatrix>,
    samples_per_edge: usize,
    tolerance: f64,
) -> Result<bool> {
    let mut diagonals: BTreeMap<&crate::perm::Permutation, Vec<f64>> = BTreeMap::new();
    for (g, u) in vertex_values {
        let residue = CMatrix::permutation(g).adjoint().mul(u);
        if residue.unitarity_defect() > tolerance {
            return Err(Error::InvalidInput(format!(
                "vertex value at {g:?} is not unitary"
            )));
        }
        for i in 0..residue.n() {
            for j in 0..residue.n() {
                if i != j && residue[(i, j)].norm() > tolerance {
                    return Err(Error::InvalidInput(format!(
                        "non-diagonal vertex residue at {g:?}"
                    )));
                }
            }
        }
        let phases = (0..residue.n()).map(|i| residue[(i, i)].arg()).collect();
        diagonals.insert(g, phases);
    }

    let vertices: Vec<&crate::perm::Permutation> = vertex_values.keys().collect();
    let n = vertices.first().map_or(0, |g| g.n());
    let diag_exp = |phases: &[f64]| {
        let mut m = CMatrix::zeros(n);
        for (i, &p) in phases.iter().enumerate() {
            m[(i, i)] = Complex64::from_polar(1.0, p);
        }
        m
    };

    for (a, &g0) in vertices.iter().enumerate() {
        for &g1 in &vertices[a + 1..] {
            let (g0, g1) = if g0 < g1 { (g0, g1) } else { (g1, g0) };
            let edge = Subsimplex::new(vec![g0.clone(), g1.clone()])?;
            let base = edge_path(&edge, &vec![0; edge.partition().len()], samples_per_edge)?;
            let u_g0 = CMatrix::permutation(g0);
            let t0 = &diagonals[g0];
            let t1 = &diagonals[g1];
            for (s, gamma) in base.samples().iter().enumerate() {
                let t = s as f64 / samples_per_edge as f64;
                let mixed: Vec<f64> = t0
                    .iter()
                    .zip(t1)
                    .map(|(&p0, &p1)| (1.0 - t) * p0 + t * p1)
                    .collect();
                // weak map value and its correction
                let weak = u_g0.mul(gamma).mul(&diag_exp(&mixed));
                let corrected =
                    weak.mul(&diag_exp(&mixed.iter().map(|&p| -p).collect::<Vec<_>>()));
                let residue = u_g0.adjoint().mul(&corrected);
                if residue.off_block_mass(&edge.partition()) > tolerance {
                    return Ok(false);
                }
                if s == 0 && corrected.max_entry_distance(&u_g0) > tolerance {
                    return Ok(false);
                }
                if s == samples_per_edge
                    && corrected.max_entry_distance(&u_g0.mul(base.end())) > tolerance
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A pseudorandom smooth path in `U(𝒫)`: a product of rank-one phase
/// twists `exp(itθ vv*)` with `v` supported inside single blocks, left
/// multiplied by a constant block permutation-free unitary. Used by the
/// property suites.
pub fn random_block_path(
    partition: &Partition,
    num_samples: usize,
    rng: &mut impl rand::Rng,
) -> BlockUnitaryPath {
    let n = partition.n();
    let factors: Vec<(Vec<Complex64>, f64)> = partition
        .blocks()
        .iter()
        .flat_map(|block| {
            let mut out = Vec::new();
            for _ in 0..2 {
                // random unit vector supported on the block
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                let mut norm = 0.0;
                for &i in block {
                    let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    norm += z.norm_sqr();
                    v[i as usize - 1] = z;
                }
                let norm = norm.sqrt();
                for z in v.iter_mut() {
                    *z /= norm;
                }
                let theta = rng.gen_range(-2.0 * PI..2.0 * PI);
                out.push((v, theta));
            }
            out
        })
        .collect();

    let mut samples = Vec::with_capacity(num_samples + 1);
    for s in 0..=num_samples {
        let t = s as f64 / num_samples as f64;
        let mut u = CMatrix::identity(n);
        for (v, theta) in &factors {
            // exp(itθ vv*) = I + (e^{itθ} − 1) vv*
            let scale = Complex64::from_polar(1.0, t * theta) - Complex64::new(1.0, 0.0);
            let mut factor = CMatrix::identity(n);
            for i in 0..n {
                for j in 0..n {
                    factor[(i, j)] += scale * v[i] * v[j].conj();
                }
            }
            u = u.mul(&factor);
        }
        samples.push(u);
    }
    BlockUnitaryPath::new(partition.clone(), samples, 1e-8).expect("construction is unitary")
}
