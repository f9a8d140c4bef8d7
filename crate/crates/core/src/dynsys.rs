//! The pair of piecewise-equivalent dynamical systems living on the
//! 2-skeleton: exact rational points, the `V_g` cover and `D`-domains, the
//! quotient classes `[x, i]`, the two map families σ̃ and τ̃, and the grid
//! sweep certifying their piecewise equivalence.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::paths::CMatrix;
use crate::perm::Permutation;
use crate::skeleton::{enumerate_cells, Subsimplex};
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Exact rational barycentric point of the 2-skeleton: at most three
/// nonzero coordinates summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonPoint {
    n: usize,
    coords: BTreeMap<Permutation, Rational64>,
}

impl SkeletonPoint {
    pub fn new(coords: BTreeMap<Permutation, Rational64>) -> Result<Self> {
        let mut n = 0;
        let mut sum = Rational64::zero();
        let mut support = BTreeMap::new();
        for (g, c) in coords {
            if n == 0 {
                n = g.n();
            } else if g.n() != n {
                return Err(Error::DimensionMismatch {
                    left: g.n(),
                    right: n,
                });
            }
            if c < Rational64::zero() {
                return Err(Error::InvalidInput(format!(
                    "negative barycentric coordinate {c} at {g:?}"
                )));
            }
            sum += c;
            if !c.is_zero() {
                support.insert(g, c);
            }
        }
        if sum != Rational64::from_integer(1) {
            return Err(Error::InvalidInput(format!(
                "barycentric coordinates sum to {sum}, not 1"
            )));
        }
        if support.len() > 3 {
            return Err(Error::InvalidInput(format!(
                "support size {} exceeds 3: the point leaves the 2-skeleton",
                support.len()
            )));
        }
        Ok(Self { n, coords: support })
    }

    /// The vertex point `x = g`.
    pub fn vertex(g: Permutation) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(g, Rational64::from_integer(1));
        Self::new(coords).expect("a vertex is a valid point")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The coordinate `x_g` (zero off the support).
    pub fn coord(&self, g: &Permutation) -> Rational64 {
        self.coords.get(g).copied().unwrap_or_else(Rational64::zero)
    }

    /// Support vertices in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &Permutation> {
        self.coords.keys()
    }
}

/// A class `[x, i]` of the quotient `Δ^{S_n}_{(2)} × {1,…,n} / ∼`, keyed by
/// the minimal element of `i`'s block in the join over all containing
/// domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZClass {
    pub point: SkeletonPoint,
    pub rep: u8,
}

/// Which of the two map families to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Sigma,
    Tau,
}

const QUARTER: Rational64 = Rational64::new_raw(1, 4);

/// Exact strict membership `x ∈ V_g = { x_g > 1/4 }`.
pub fn in_v(x: &SkeletonPoint, g: &Permutation) -> bool {
    x.coord(g) > QUARTER
}

/// All non-degenerate domains `D_{g0,…,gl}` containing `x`, i.e. the
/// subsimplices on non-empty subsets of `S = { g : x_g ≥ 1/4 }`.
pub fn containing_domains(x: &SkeletonPoint) -> Vec<Subsimplex> {
    let s: Vec<&Permutation> = x.support().filter(|g| x.coord(g) >= QUARTER).collect();
    debug_assert!(s.len() <= 3, "at most three coordinates can reach 1/4");
    let mut out = Vec::new();
    for mask in 1u32..(1 << s.len()) {
        let vertices: Vec<Permutation> = s
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .map(|(_, g)| (*g).clone())
            .collect();
        out.push(Subsimplex::new(vertices).expect("subset of sorted support"));
    }
    out
}

/// The join of `𝒫(Δ^{g0,…,gl})` over all domains containing `x`.
pub fn join_partition_at(x: &SkeletonPoint) -> Result<Partition> {
    let mut acc = Partition::finest(x.n());
    for domain in containing_domains(x) {
        acc = acc.join(&domain.partition())?;
    }
    Ok(acc)
}

/// The class `[x, i]` with its canonical (minimal) representative.
pub fn z_class(x: &SkeletonPoint, i: u8) -> Result<ZClass> {
    if i == 0 || i as usize > x.n() {
        return Err(Error::InvalidInput(format!(
            "index {i} outside 1..={}",
            x.n()
        )));
    }
    let join = join_partition_at(x)?;
    let rep = join.blocks()[join.block_of(i)][0];
    Ok(ZClass {
        point: x.clone(),
        rep,
    })
}

/// `σ̃_i(x) = [x, i]`.
pub fn sigma_eval(x: &SkeletonPoint, i: u8) -> Result<ZClass> {
    z_class(x, i)
}

/// Chart evaluations `(g, [x, g⁻¹(i)])` for every `g` with `x ∈ V_g`.
fn tau_charts(x: &SkeletonPoint, i: u8) -> Result<Vec<(Permutation, ZClass)>> {
    x.support()
        .filter(|g| in_v(x, g))
        .map(|g| Ok((g.clone(), z_class(x, g.inverse().apply(i))?)))
        .collect()
}

/// `τ̃_i(x) = [x, g⁻¹(i)]` through any chart `V_g ∋ x`; the charts must
/// agree, and at least one must cover `x` — both are consequences of the
/// cover and gluing lemmas, so violations are internal errors.
pub fn tau_eval(x: &SkeletonPoint, i: u8) -> Result<ZClass> {
    let charts = tau_charts(x, i)?;
    let Some((_, first)) = charts.first() else {
        return Err(Error::Internal(format!(
            "no chart covers {x:?}: the cover lemma is violated"
        )));
    };
    if charts.iter().any(|(_, c)| c != first) {
        return Err(Error::Internal(format!(
            "charts disagree at {x:?}: the gluing lemma is violated"
        )));
    }
    Ok(first.clone())
}

/// The partition `𝒫_σ(x)` (or `𝒫_τ(x)`) of `{1,…,n}` by equality of
/// evaluated classes.
pub fn point_partition(x: &SkeletonPoint, kind: MapKind) -> Result<Partition> {
    let eval = |i: u8| match kind {
        MapKind::Sigma => sigma_eval(x, i),
        MapKind::Tau => tau_eval(x, i),
    };
    let reps: Vec<u8> = (1..=x.n() as u8)
        .map(|i| eval(i).map(|c| c.rep))
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<u8, Vec<u8>> = BTreeMap::new();
    for (i, &r) in reps.iter().enumerate() {
        groups.entry(r).or_default().push(i as u8 + 1);
    }
    Partition::from_blocks(groups.into_values().collect())
}

/// The image partition `g·P` grouping `i, j` iff `g⁻¹(i) ∼_P g⁻¹(j)`.
/// The τ-partition at `x` is the image of the σ-partition under any chart.
pub fn image_partition(g: &Permutation, p: &Partition) -> Result<Partition> {
    let blocks = p
        .blocks()
        .iter()
        .map(|block| {
            let mut image: Vec<u8> = block.iter().map(|&i| g.apply(i)).collect();
            image.sort_unstable();
            image
        })
        .collect();
    Partition::from_blocks(blocks)
}

/// Replays the block constraint on a candidate intertwiner: a unitary
/// `u(x)` conjugating σ to τ at `x` with permutation part `g` must satisfy
/// `U_g* u(x) ∈ U(𝒫_σ(x))`.
pub fn check_block_constraint(
    x: &SkeletonPoint,
    g: &Permutation,
    u: &CMatrix,
    tolerance: f64,
) -> Result<bool> {
    if u.n() != x.n() {
        return Err(Error::DimensionMismatch {
            left: u.n(),
            right: x.n(),
        });
    }
    if u.unitarity_defect() > tolerance {
        return Err(Error::InvalidInput(
            "candidate intertwiner is not unitary".into(),
        ));
    }
    let residue = CMatrix::permutation(g).adjoint().mul(u);
    let partition = point_partition(x, MapKind::Sigma)?;
    Ok(residue.off_block_mass(&partition) <= tolerance)
}

/// Outcome of the exact grid sweep; every failure count must be zero.
#[derive(Debug, Clone, Serialize)]
pub struct PiecewiseReport {
    pub grid_depth: u32,
    pub points_checked: u64,
    pub cover_failures: u64,
    pub gluing_failures: u64,
    pub partition_lemma_failures: u64,
}

impl PiecewiseReport {
    pub fn passed(&self) -> bool {
        self.cover_failures == 0 && self.gluing_failures == 0 && self.partition_lemma_failures == 0
    }
}

/// Sweeps the barycentric lattice `{(a/d, b/d, c/d)}` of every 2-face,
/// checking the cover property, chart agreement of τ̃, equality of the σ-
/// and τ-partitions, and the point-partition lemma
/// `𝒫_σ(x) ⪯ 𝒫(Δ^{g0,g1,g2})` — all in exact arithmetic.
pub fn check_piecewise_equivalence(n: usize, grid_depth: u32) -> Result<PiecewiseReport> {
    if grid_depth == 0 {
        return Err(Error::InvalidInput("grid depth must be at least 1".into()));
    }
    let d = grid_depth as i64;
    let mut report = PiecewiseReport {
        grid_depth,
        points_checked: 0,
        cover_failures: 0,
        gluing_failures: 0,
        partition_lemma_failures: 0,
    };
    for face in enumerate_cells(n, 2)? {
        let face_partition = face.partition();
        let verts = face.vertices();
        for a in 0..=d {
            for b in 0..=d - a {
                let c = d - a - b;
                let mut coords = BTreeMap::new();
                for (&w, g) in [a, b, c].iter().zip(verts) {
                    coords.insert(g.clone(), Rational64::new(w, d));
                }
                let x = SkeletonPoint::new(coords)?;
                report.points_checked += 1;

                if !verts.iter().any(|g| in_v(&x, g)) {
                    report.cover_failures += 1;
                }

                let mut sigma_ok = true;
                for i in 1..=n as u8 {
                    let charts = tau_charts(&x, i)?;
                    let agree = charts.windows(2).all(|w| w[0].1 == w[1].1);
                    let sigma = sigma_eval(&x, i)?;
                    // on every chart V_g, τ̃_i must equal σ̃_{g⁻¹(i)}
                    let matches_sigma = charts.iter().try_fold(true, |acc, (g, class)| {
                        Ok::<bool, Error>(acc && *class == sigma_eval(&x, g.inverse().apply(i))?)
                    })?;
                    if charts.is_empty() || !agree || !matches_sigma {
                        report.gluing_failures += 1;
                        sigma_ok = false;
                    }
                    let _ = sigma;
                }

                if sigma_ok {
                    let p_sigma = point_partition(&x, MapKind::Sigma)?;
                    let p_tau = point_partition(&x, MapKind::Tau)?;
                    // 𝒫_σ(x) ⪯ 𝒫(face), and 𝒫_τ(x) = g·𝒫_σ(x) on every chart
                    let tau_matches = verts
                        .iter()
                        .filter(|g| in_v(&x, g))
                        .map(|g| Ok::<bool, Error>(p_tau == image_partition(g, &p_sigma)?))
                        .try_fold(true, |acc, ok| ok.map(|ok| acc && ok))?;
                    if !p_sigma.refines(&face_partition)? || !tau_matches {
                        report.partition_lemma_failures += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}
