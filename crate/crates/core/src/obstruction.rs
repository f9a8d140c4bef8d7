//! Assembly of the integer system `M x = D`: the matrix over (face, block)
//! rows and (edge, block) columns, the half-integer defect vector, and the
//! integer right-hand side, plus file export/import.

use crate::error::{Error, Result};
use crate::skeleton::{build_index, CellEntry, CellIndex};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

/// Smallest and largest `n` for which the system is built.
pub const MIN_SYSTEM_N: usize = 2;
pub const MAX_SYSTEM_N: usize = 5;

/// The assembled obstruction system.
///
/// `delta_numerators[j]` holds the numerator of the `j`-th defect entry over
/// the fixed denominator 2, so the vector stays exact.
#[derive(Debug, Clone)]
pub struct ObstructionSystem {
    pub n: usize,
    pub col_index: CellIndex,
    pub row_index: CellIndex,
    /// Dense rows with entries in {-1, 0, +1}.
    matrix: Vec<Vec<i8>>,
    delta_numerators: Vec<i64>,
    rhs: Vec<i64>,
}

impl ObstructionSystem {
    pub fn num_rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn num_cols(&self) -> usize {
        self.col_index.len()
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.matrix[i]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.matrix
    }

    /// Defect entries as exact halves: numerator over denominator 2.
    pub fn delta_numerators(&self) -> &[i64] {
        &self.delta_numerators
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }
}

/// Defect vector over a dim-1 index, as numerators over denominator 2:
/// entry is 1 (i.e. 1/2) for an even block, 0 for an odd block.
pub fn build_delta(col_index: &CellIndex) -> Result<Vec<i64>> {
    if col_index.dim() != 1 {
        return Err(Error::InvalidInput(format!(
            "delta is defined over a dim-1 index, got dim {}",
            col_index.dim()
        )));
    }
    Ok(col_index
        .entries()
        .iter()
        .map(|e| if e.block.len() % 2 == 0 { 1 } else { 0 })
        .collect())
}

fn check_system_n(n: usize) -> Result<()> {
    if !(MIN_SYSTEM_N..=MAX_SYSTEM_N).contains(&n) {
        return Err(Error::SizeLimit {
            n,
            min: MIN_SYSTEM_N,
            max: MAX_SYSTEM_N,
        });
    }
    Ok(())
}

/// Builds the full system for the given `n`, asserting integrality of the
/// right-hand side.
pub fn build_matrix(n: usize) -> Result<ObstructionSystem> {
    check_system_n(n)?;
    let col_index = build_index(n, 1)?;
    let row_index = build_index(n, 2)?;
    let ncols = col_index.len();

    let mut matrix = Vec::with_capacity(row_index.len());
    for row_entry in row_index.entries() {
        matrix.push(assemble_row(&col_index, row_entry, ncols)?);
    }

    let delta_numerators = build_delta(&col_index)?;
    let rhs = multiply_halves(&matrix, &delta_numerators)?;

    Ok(ObstructionSystem {
        n,
        col_index,
        row_index,
        matrix,
        delta_numerators,
        rhs,
    })
}

fn assemble_row(col_index: &CellIndex, row_entry: &CellEntry, ncols: usize) -> Result<Vec<i8>> {
    let face = &row_entry.cell;
    let block = &row_entry.block;
    let edges = face
        .boundary_edges()
        .ok_or_else(|| Error::Internal("row cell is not a 2-face".into()))?;
    let mut row = vec![0i8; ncols];
    // +1 on the (g0,g1) and (g1,g2) edges, -1 on (g0,g2)
    for (edge, sign) in edges.iter().zip([1i8, 1, -1]) {
        for sub_block in edge.partition().blocks() {
            if sub_block.iter().all(|i| block.contains(i)) {
                let col = col_index.ordinal(edge, sub_block).ok_or_else(|| {
                    Error::Internal("boundary edge block missing from column index".into())
                })?;
                row[col] = sign;
            }
        }
    }
    Ok(row)
}

/// `(M · numerators) / 2` in integer arithmetic, with a divisibility check
/// on every entry.
fn multiply_halves(matrix: &[Vec<i8>], numerators: &[i64]) -> Result<Vec<i64>> {
    matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let twice: i64 = row
                .iter()
                .zip(numerators)
                .map(|(&m, &d)| i64::from(m) * d)
                .sum();
            if twice % 2 != 0 {
                return Err(Error::Internal(format!(
                    "row {i}: M·delta entry {twice}/2 is not an integer"
                )));
            }
            Ok(twice / 2)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct VectorFile {
    format_version: u32,
    n: usize,
    /// Exact entries as strings, e.g. "1/2", "-1", "0".
    entries: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct IndicesFile {
    format_version: u32,
    n: usize,
    columns: Vec<CellEntry>,
    rows: Vec<CellEntry>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `M.mtx`, `delta.json`, `D.json`, and `indices.json` into `dir`.
pub fn export_system(sys: &ObstructionSystem, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;

    let mtx_path = dir.join("M.mtx");
    let mut mtx = Vec::new();
    writeln!(mtx, "%%MatrixMarket matrix coordinate integer general").unwrap();
    writeln!(mtx, "% obstruction system for n = {}", sys.n).unwrap();
    let nnz: usize = sys
        .matrix
        .iter()
        .map(|r| r.iter().filter(|&&v| v != 0).count())
        .sum();
    writeln!(mtx, "{} {} {}", sys.num_rows(), sys.num_cols(), nnz).unwrap();
    for (i, row) in sys.matrix.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                writeln!(mtx, "{} {} {}", i + 1, j + 1, v).unwrap();
            }
        }
    }
    fs::write(&mtx_path, mtx).map_err(io_err(&mtx_path))?;

    let delta = VectorFile {
        format_version: FORMAT_VERSION,
        n: sys.n,
        entries: sys
            .delta_numerators
            .iter()
            .map(|&num| if num == 0 { "0".into() } else { format!("{num}/2") })
            .collect(),
    };
    write_json(&dir.join("delta.json"), &delta)?;

    let rhs = VectorFile {
        format_version: FORMAT_VERSION,
        n: sys.n,
        entries: sys.rhs.iter().map(|v| v.to_string()).collect(),
    };
    write_json(&dir.join("D.json"), &rhs)?;

    let indices = IndicesFile {
        format_version: FORMAT_VERSION,
        n: sys.n,
        columns: sys.col_index.entries().to_vec(),
        rows: sys.row_index.entries().to_vec(),
    };
    write_json(&dir.join("indices.json"), &indices)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let data = serde_json::to_vec_pretty(value).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    fs::write(path, data).map_err(io_err(path))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let data = fs::read(path).map_err(io_err(path))?;
    serde_json::from_slice(&data).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a system previously written by [`export_system`], revalidating
/// the indices and the `M·delta = D` identity.
pub fn import_system(dir: &Path) -> Result<ObstructionSystem> {
    let indices: IndicesFile = read_json(&dir.join("indices.json"))?;
    let col_index = CellIndex::from_entries(1, indices.columns)?;
    let row_index = CellIndex::from_entries(2, indices.rows)?;

    let mtx_path = dir.join("M.mtx");
    let matrix = read_matrix_market(&mtx_path, row_index.len(), col_index.len())?;

    let delta_file: VectorFile = read_json(&dir.join("delta.json"))?;
    let delta_numerators = delta_file
        .entries
        .iter()
        .map(|s| parse_half(s, &mtx_path))
        .collect::<Result<Vec<_>>>()?;

    let rhs_file: VectorFile = read_json(&dir.join("D.json"))?;
    let rhs = rhs_file
        .entries
        .iter()
        .map(|s| {
            s.parse::<i64>().map_err(|_| Error::Format {
                path: dir.join("D.json"),
                reason: format!("bad integer entry {s:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let recomputed = multiply_halves(&matrix, &delta_numerators)?;
    if recomputed != rhs {
        return Err(Error::Format {
            path: dir.to_path_buf(),
            reason: "stored D does not equal M·delta".into(),
        });
    }

    Ok(ObstructionSystem {
        n: indices.n,
        col_index,
        row_index,
        matrix,
        delta_numerators,
        rhs,
    })
}

fn parse_half(s: &str, path: &Path) -> Result<i64> {
    if let Some(num) = s.strip_suffix("/2") {
        num.parse::<i64>().map_err(|_| Error::Format {
            path: path.to_path_buf(),
            reason: format!("bad half-integer entry {s:?}"),
        })
    } else {
        let whole: i64 = s.parse().map_err(|_| Error::Format {
            path: path.to_path_buf(),
            reason: format!("bad half-integer entry {s:?}"),
        })?;
        Ok(whole * 2)
    }
}

fn read_matrix_market(path: &Path, nrows: usize, ncols: usize) -> Result<Vec<Vec<i8>>> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    let mut lines = BufReader::new(file).lines();
    let bad = |reason: String| Error::Format {
        path: path.to_path_buf(),
        reason,
    };

    let header = lines
        .next()
        .ok_or_else(|| bad("empty file".into()))?
        .map_err(io_err(path))?;
    if header.trim() != "%%MatrixMarket matrix coordinate integer general" {
        return Err(bad(format!("unexpected header {header:?}")));
    }

    let mut matrix = vec![vec![0i8; ncols]; nrows];
    let mut sizes_seen = false;
    let mut expected_nnz = 0usize;
    let mut nnz = 0usize;
    for line in lines {
        let line = line.map_err(io_err(path))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !sizes_seen {
            if fields.len() != 3 {
                return Err(bad(format!("bad size line {line:?}")));
            }
            let (r, c): (usize, usize) = (
                fields[0].parse().map_err(|_| bad(format!("bad size line {line:?}")))?,
                fields[1].parse().map_err(|_| bad(format!("bad size line {line:?}")))?,
            );
            if r != nrows || c != ncols {
                return Err(bad(format!(
                    "matrix shape {r}x{c} does not match indices {nrows}x{ncols}"
                )));
            }
            expected_nnz = fields[2]
                .parse()
                .map_err(|_| bad(format!("bad size line {line:?}")))?;
            sizes_seen = true;
            continue;
        }
        if fields.len() != 3 {
            return Err(bad(format!("bad entry line {line:?}")));
        }
        let i: usize = fields[0].parse().map_err(|_| bad(format!("bad entry {line:?}")))?;
        let j: usize = fields[1].parse().map_err(|_| bad(format!("bad entry {line:?}")))?;
        let v: i8 = fields[2].parse().map_err(|_| bad(format!("bad entry {line:?}")))?;
        if i == 0 || i > nrows || j == 0 || j > ncols {
            return Err(bad(format!("entry ({i}, {j}) out of bounds")));
        }
        matrix[i - 1][j - 1] = v;
        nnz += 1;
    }
    if !sizes_seen {
        return Err(bad("missing size line".into()));
    }
    if nnz != expected_nnz {
        return Err(bad(format!("expected {expected_nnz} nonzeros, found {nnz}")));
    }
    Ok(matrix)
}
