//! Gaussian elimination modulo a prime.

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Incremental reduced row echelon form over GF(p). Pivot choice is the
/// lowest-index remaining column, matching the GF(2) layer.
pub struct GfpElimination {
    p: u64,
    ncols: usize,
    /// (pivot column, normalized row, rhs), pivot entry scaled to 1.
    pivots: Vec<(usize, Vec<u64>, u64)>,
    inconsistent: bool,
}

impl GfpElimination {
    /// `p` must be prime; p = 2 is allowed here so the generic elimination
    /// can be cross-checked against the bitset layer.
    pub fn new(p: u64, ncols: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        Ok(Self {
            p,
            ncols,
            pivots: Vec::new(),
            inconsistent: false,
        })
    }

    pub fn insert(&mut self, mut row: Vec<u64>, mut rhs: u64) {
        let p = self.p;
        for (col, prow, prhs) in &self.pivots {
            let factor = row[*col];
            if factor != 0 {
                for (r, q) in row.iter_mut().zip(prow) {
                    *r = (*r + (p - factor) * q % p) % p;
                }
                rhs = (rhs + (p - factor) * prhs % p) % p;
            }
        }
        match row.iter().position(|&v| v != 0) {
            None => {
                if rhs != 0 {
                    self.inconsistent = true;
                }
            }
            Some(col) => {
                let scale = inv_mod(row[col], p);
                for r in row.iter_mut() {
                    *r = *r * scale % p;
                }
                rhs = rhs * scale % p;
                for (_, prow, prhs) in self.pivots.iter_mut() {
                    let factor = prow[col];
                    if factor != 0 {
                        for (q, r) in prow.iter_mut().zip(&row) {
                            *q = (*q + (p - factor) * r % p) % p;
                        }
                        *prhs = (*prhs + (p - factor) * rhs % p) % p;
                    }
                }
                let pos = self.pivots.partition_point(|(c, _, _)| *c < col);
                self.pivots.insert(pos, (col, row, rhs));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rank_augmented(&self) -> usize {
        self.pivots.len() + usize::from(self.inconsistent)
    }

    pub fn solvable(&self) -> bool {
        !self.inconsistent
    }

    /// A solution with free variables set to zero, entries in `0..p`.
    pub fn witness(&self) -> Option<Vec<u64>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![0u64; self.ncols];
        for (col, _, rhs) in &self.pivots {
            x[*col] = *rhs;
        }
        Some(x)
    }
}

fn reduce_row(row: &[i8], p: u64) -> Vec<u64> {
    row.iter()
        .map(|&v| (i64::from(v)).rem_euclid(p as i64) as u64)
        .collect()
}

/// Rank of an integer matrix over GF(p).
pub fn rank_gfp(matrix: &[Vec<i8>], p: u64) -> Result<usize> {
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut elim = GfpElimination::new(p, ncols)?;
    for row in matrix {
        elim.insert(reduce_row(row, p), 0);
    }
    Ok(elim.rank())
}

/// Full elimination of `[M | D]` over GF(p).
pub fn eliminate_gfp(matrix: &[Vec<i8>], rhs: &[i64], p: u64) -> Result<GfpElimination> {
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut elim = GfpElimination::new(p, ncols)?;
    for (row, &d) in matrix.iter().zip(rhs) {
        elim.insert(reduce_row(row, p), d.rem_euclid(p as i64) as u64);
    }
    Ok(elim)
}
