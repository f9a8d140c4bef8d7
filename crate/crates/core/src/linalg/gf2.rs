//! Bit-packed Gaussian elimination over GF(2).

/// A row of bits packed into machine words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zero(ncols: usize) -> Self {
        Self {
            words: vec![0; ncols.div_ceil(64).max(1)],
        }
    }

    pub fn get(&self, col: usize) -> bool {
        self.words[col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, col: usize) {
        self.words[col / 64] |= 1 << (col % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_set(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }
}

/// Incremental reduced row echelon form over GF(2). The pivot for each
/// incoming row is its lowest-index remaining column.
pub struct Gf2Elimination {
    ncols: usize,
    /// (pivot column, reduced row, rhs bit), sorted by pivot column.
    pivots: Vec<(usize, BitRow, bool)>,
    inconsistent: bool,
}

impl Gf2Elimination {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: Vec::new(),
            inconsistent: false,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn insert(&mut self, mut row: BitRow, mut rhs: bool) {
        for (col, prow, prhs) in &self.pivots {
            if row.get(*col) {
                row.xor_assign(prow);
                rhs ^= *prhs;
            }
        }
        match row.first_set() {
            None => {
                if rhs {
                    self.inconsistent = true;
                }
            }
            Some(col) => {
                // keep the basis reduced
                for (_, prow, prhs) in self.pivots.iter_mut() {
                    if prow.get(col) {
                        prow.xor_assign(&row);
                        *prhs ^= rhs;
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

    /// Rank of the augmented matrix (coefficient rank plus one when an
    /// inconsistent zero row was seen).
    pub fn rank_augmented(&self) -> usize {
        self.pivots.len() + usize::from(self.inconsistent)
    }

    pub fn solvable(&self) -> bool {
        !self.inconsistent
    }

    /// A solution with free variables set to zero, as 0/1 entries.
    pub fn witness(&self) -> Option<Vec<u8>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![0u8; self.ncols];
        for (col, _, rhs) in &self.pivots {
            x[*col] = u8::from(*rhs);
        }
        Some(x)
    }
}

fn pack_row(row: &[i8], ncols: usize) -> BitRow {
    let mut bits = BitRow::zero(ncols);
    for (j, &v) in row.iter().enumerate() {
        if v.rem_euclid(2) == 1 {
            bits.set(j);
        }
    }
    bits
}

/// Rank of an integer matrix over GF(2).
pub fn rank_gf2(matrix: &[Vec<i8>]) -> usize {
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut elim = Gf2Elimination::new(ncols);
    for row in matrix {
        elim.insert(pack_row(row, ncols), false);
    }
    elim.rank()
}

/// Full elimination of `[M | D]` over GF(2).
pub fn eliminate_gf2(matrix: &[Vec<i8>], rhs: &[i64]) -> Gf2Elimination {
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut elim = Gf2Elimination::new(ncols);
    for (row, &d) in matrix.iter().zip(rhs) {
        elim.insert(pack_row(row, ncols), d.rem_euclid(2) == 1);
    }
    elim
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_rank() {
        let m = vec![vec![0i8; 5]; 3];
        assert_eq!(rank_gf2(&m), 0);
    }

    #[test]
    fn identity_rank() {
        let k = 7;
        let m: Vec<Vec<i8>> = (0..k)
            .map(|i| (0..k).map(|j| i8::from(i == j)).collect())
            .collect();
        assert_eq!(rank_gf2(&m), k);
    }

    #[test]
    fn minus_one_counts_as_one() {
        let m = vec![vec![-1i8, 1], vec![1, -1]];
        assert_eq!(rank_gf2(&m), 1);
    }

    #[test]
    fn even_entries_vanish() {
        let m = vec![vec![2i8, 0], vec![0, -2]];
        assert_eq!(rank_gf2(&m), 0);
    }

    #[test]
    fn witness_solves_system() {
        // x1 + x2 = 1, x2 + x3 = 0, x1 + x3 = 1
        let m = vec![vec![1i8, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        let d = vec![1, 0, 1];
        let elim = eliminate_gf2(&m, &d);
        assert!(elim.solvable());
        let x = elim.witness().unwrap();
        for (row, &rhs) in m.iter().zip(&d) {
            let lhs: u8 = row
                .iter()
                .zip(&x)
                .map(|(&a, &b)| (a.unsigned_abs() * b) % 2)
                .fold(0, |acc, v| acc ^ (v % 2));
            assert_eq!(lhs, (rhs % 2) as u8);
        }
    }

    #[test]
    fn inconsistent_system() {
        let m = vec![vec![1i8, 1], vec![1, 1]];
        let d = vec![0, 1];
        let elim = eliminate_gf2(&m, &d);
        assert!(!elim.solvable());
        assert_eq!(elim.rank(), 1);
        assert_eq!(elim.rank_augmented(), 2);
        assert!(elim.witness().is_none());
    }
}
