//! Vertices, edges, and 2-faces of the `S_n`-simplex, their attached orbit
//! partitions, and the flattened (cell, block) index sets.

use crate::error::{Error, Result};
use crate::partition::{orbit_partition, Partition};
use crate::perm::{enumerate_sn, Permutation};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::HashMap;

/// Largest `n` for which face enumeration (`C(n!, 3)` cells) is allowed.
pub const MAX_SKELETON_N: usize = 5;

/// A subsimplex of dimension 0, 1, or 2, with vertices strictly increasing
/// in the lexicographic order on `S_n`. The ascending vertex order is the
/// canonical orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Subsimplex {
    vertices: Vec<Permutation>,
}

impl<'de> Deserialize<'de> for Subsimplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<Permutation>::deserialize(deserializer)?;
        Subsimplex::new(vertices).map_err(D::Error::custom)
    }
}

impl Subsimplex {
    pub fn new(vertices: Vec<Permutation>) -> Result<Self> {
        if vertices.is_empty() || vertices.len() > 3 {
            return Err(Error::InvalidInput(format!(
                "subsimplex must have 1–3 vertices, got {}",
                vertices.len()
            )));
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "subsimplex vertices must be strictly increasing".into(),
            ));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn n(&self) -> usize {
        self.vertices[0].n()
    }

    /// `𝒫(Δ^{g0,…,gk}) = 𝒫(g0⁻¹g1, …, g0⁻¹gk)`. Vertices get the finest
    /// partition.
    pub fn partition(&self) -> Partition {
        let g0_inv = self.vertices[0].inverse();
        let gens: Vec<Permutation> = self.vertices[1..]
            .iter()
            .map(|g| g0_inv.compose(g).expect("equal n"))
            .collect();
        orbit_partition(self.n(), &gens).expect("equal n")
    }

    /// The boundary edges `(g0,g1), (g1,g2), (g0,g2)` of a 2-face.
    pub fn boundary_edges(&self) -> Option<[Subsimplex; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let [g0, g1, g2] = [&self.vertices[0], &self.vertices[1], &self.vertices[2]];
        let edge = |a: &Permutation, b: &Permutation| Subsimplex {
            vertices: vec![a.clone(), b.clone()],
        };
        Some([edge(g0, g1), edge(g1, g2), edge(g0, g2)])
    }
}

fn check_skeleton_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SKELETON_N {
        return Err(Error::SizeLimit {
            n,
            min: 1,
            max: MAX_SKELETON_N,
        });
    }
    Ok(())
}

/// All subsimplices of the given dimension, in lexicographic order of their
/// vertex tuples.
pub fn enumerate_cells(n: usize, dim: usize) -> Result<Vec<Subsimplex>> {
    check_skeleton_n(n)?;
    if dim > 2 {
        return Err(Error::InvalidInput(format!("dimension {dim} not in 0..=2")));
    }
    let sn = enumerate_sn(n)?;
    let mut out = Vec::new();
    match dim {
        0 => {
            for g in &sn {
                out.push(Subsimplex {
                    vertices: vec![g.clone()],
                });
            }
        }
        1 => {
            for i in 0..sn.len() {
                for j in i + 1..sn.len() {
                    out.push(Subsimplex {
                        vertices: vec![sn[i].clone(), sn[j].clone()],
                    });
                }
            }
        }
        _ => {
            for i in 0..sn.len() {
                for j in i + 1..sn.len() {
                    for k in j + 1..sn.len() {
                        out.push(Subsimplex {
                            vertices: vec![sn[i].clone(), sn[j].clone(), sn[k].clone()],
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One entry of a flattened (cell, block) index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellEntry {
    #[serde(rename = "vertices")]
    pub cell: Subsimplex,
    pub block: Vec<u8>,
}

/// The index set `C` (dim 1) or `R` (dim 2): all (cell, block) pairs with
/// `block ∈ 𝒫(cell)`, ordered by (vertex tuple, block minimum), with a
/// reverse lookup map.
#[derive(Debug, Clone)]
pub struct CellIndex {
    dim: usize,
    entries: Vec<CellEntry>,
    lookup: HashMap<CellEntry, usize>,
}

impl CellIndex {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CellEntry] {
        &self.entries
    }

    pub fn entry(&self, ordinal: usize) -> &CellEntry {
        &self.entries[ordinal]
    }

    pub fn ordinal(&self, cell: &Subsimplex, block: &[u8]) -> Option<usize> {
        self.lookup
            .get(&CellEntry {
                cell: cell.clone(),
                block: block.to_vec(),
            })
            .copied()
    }

    /// Rebuilds the index from a plain entry list (deserialization path);
    /// validates that each block belongs to its cell's partition and that
    /// the canonical order holds.
    pub fn from_entries(dim: usize, entries: Vec<CellEntry>) -> Result<Self> {
        for e in &entries {
            if e.cell.dim() != dim {
                return Err(Error::InvalidInput(format!(
                    "cell of dimension {} in a dim-{dim} index",
                    e.cell.dim()
                )));
            }
            let p = e.cell.partition();
            if !p.blocks().iter().any(|b| b == &e.block) {
                return Err(Error::InvalidInput(format!(
                    "block {:?} not in the cell partition {:?}",
                    e.block, p
                )));
            }
        }
        let mut sorted = entries.clone();
        sorted.sort_by(|a, b| (&a.cell, a.block[0]).cmp(&(&b.cell, b.block[0])));
        if sorted != entries {
            return Err(Error::InvalidInput(
                "index entries are not in canonical order".into(),
            ));
        }
        let lookup = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(Self { dim, entries, lookup })
    }
}

/// Builds the flattened (cell, block) index for the given dimension.
pub fn build_index(n: usize, dim: usize) -> Result<CellIndex> {
    if dim != 1 && dim != 2 {
        return Err(Error::InvalidInput(format!("index dimension {dim} not in 1..=2")));
    }
    let cells = enumerate_cells(n, dim)?;
    let mut entries = Vec::new();
    for cell in cells {
        let partition = cell.partition();
        for block in partition.blocks() {
            entries.push(CellEntry {
                cell: cell.clone(),
                block: block.clone(),
            });
        }
    }
    let lookup = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    Ok(CellIndex { dim, entries, lookup })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts_n4() {
        assert_eq!(enumerate_cells(4, 0).unwrap().len(), 24);
        assert_eq!(enumerate_cells(4, 1).unwrap().len(), 276);
        assert_eq!(enumerate_cells(4, 2).unwrap().len(), 2024);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            enumerate_cells(6, 1),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(build_index(7, 1), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn vertex_partition_is_finest() {
        for cell in enumerate_cells(3, 0).unwrap() {
            assert_eq!(cell.partition(), Partition::finest(3));
        }
    }

    #[test]
    fn edge_partition_of_transposition() {
        let id = Permutation::identity(4);
        let t = Permutation::from_cycle(4, &[1, 2]).unwrap();
        let edge = Subsimplex::new(vec![id, t]).unwrap();
        assert_eq!(
            edge.partition(),
            Partition::from_blocks(vec![vec![1, 2], vec![3], vec![4]]).unwrap()
        );
    }

    #[test]
    fn index_sizes() {
        // n=2: one edge Δ^{e,(12)} with the single block {1,2}
        let c2 = build_index(2, 1).unwrap();
        assert_eq!(c2.len(), 1);
        assert_eq!(c2.entry(0).block, vec![1, 2]);

        // oracle: |C| = Σ over edges of cycle count of g0⁻¹g1
        let edges = enumerate_cells(4, 1).unwrap();
        let expected: usize = edges
            .iter()
            .map(|e| {
                let g01 = e.vertices()[0]
                    .inverse()
                    .compose(&e.vertices()[1])
                    .unwrap();
                g01.cycles().len()
            })
            .sum();
        assert_eq!(expected, 552);
        assert_eq!(build_index(4, 1).unwrap().len(), 552);

        // oracle: |R| = Σ over faces of |𝒫(face)|
        let faces = enumerate_cells(4, 2).unwrap();
        let expected_r: usize = faces.iter().map(|f| f.partition().len()).sum();
        assert_eq!(build_index(4, 2).unwrap().len(), expected_r);
    }

    #[test]
    fn lookup_is_bijective() {
        for (n, dim) in [(3, 1), (3, 2), (4, 1)] {
            let idx = build_index(n, dim).unwrap();
            for (i, e) in idx.entries().iter().enumerate() {
                assert_eq!(idx.ordinal(&e.cell, &e.block), Some(i));
            }
        }
    }

    #[test]
    fn boundary_edge_partitions_refine_face_partition() {
        for face in enumerate_cells(4, 2).unwrap() {
            let fp = face.partition();
            for edge in face.boundary_edges().unwrap() {
                assert!(edge.partition().refines(&fp).unwrap());
            }
        }
    }

    #[test]
    fn partition_independent_of_basepoint() {
        // 𝒫(g0⁻¹g1, g0⁻¹g2) = 𝒫(g1⁻¹g0, g1⁻¹g2): check each vertex as basepoint
        let check = |face: &Subsimplex| {
            let canonical = face.partition();
            let vs = face.vertices();
            for base in vs {
                let gens: Vec<Permutation> = vs
                    .iter()
                    .filter(|g| *g != base)
                    .map(|g| base.inverse().compose(g).unwrap())
                    .collect();
                let p = orbit_partition(face.n(), &gens).unwrap();
                assert_eq!(p, canonical);
            }
        };
        for face in enumerate_cells(3, 2).unwrap() {
            check(&face);
        }
        // sampled faces for n=4
        let faces = enumerate_cells(4, 2).unwrap();
        for face in faces.iter().step_by(37) {
            check(face);
        }
    }

    #[test]
    fn from_entries_roundtrip_and_validation() {
        let idx = build_index(3, 1).unwrap();
        let rebuilt = CellIndex::from_entries(1, idx.entries().to_vec()).unwrap();
        assert_eq!(rebuilt.entries(), idx.entries());

        let mut shuffled = idx.entries().to_vec();
        shuffled.swap(0, 1);
        assert!(CellIndex::from_entries(1, shuffled).is_err());

        let mut bad = idx.entries().to_vec();
        bad[0].block = vec![1, 2, 3];
        assert!(CellIndex::from_entries(1, bad).is_err());
    }

    #[test]
    fn subsimplex_rejects_unsorted_vertices() {
        let id = Permutation::identity(3);
        let t = Permutation::from_cycle(3, &[1, 2]).unwrap();
        assert!(Subsimplex::new(vec![t.clone(), id.clone()]).is_err());
        assert!(Subsimplex::new(vec![id.clone(), id]).is_err());
        assert!(Subsimplex::new(vec![]).is_err());
    }
}
