//! Column-style Hermite normal form over the integers.
//!
//! The columns of `M` are treated as generators of a lattice in `ℤ^m`.
//! Unimodular column operations bring them to echelon form while a
//! transformation matrix is tracked, so that solving `Mx = D` reduces to a
//! greedy forward substitution through the echelon basis. The same basis
//! answers both the integer and the rational solvability question, and its
//! pivot count is the rank of `M` over `ℚ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub struct ColumnHnf {
    nrows: usize,
    ncols: usize,
    /// Echelon lattice basis; entry `basis[k][i]` is coordinate `i` of
    /// generator `k`. Generators beyond `rank` are zero.
    basis: Vec<Vec<BigInt>>,
    /// `basis[k] = M · transform[k]`; the `transform` matrix is unimodular.
    transform: Vec<Vec<BigInt>>,
    /// Pivot coordinate of each of the first `rank` generators, increasing.
    pivots: Vec<usize>,
}

impl ColumnHnf {
    pub fn new(matrix: &[Vec<i8>]) -> Self {
        let nrows = matrix.len();
        let ncols = matrix.first().map_or(0, |r| r.len());
        let mut basis: Vec<Vec<BigInt>> = (0..ncols)
            .map(|k| (0..nrows).map(|i| BigInt::from(matrix[i][k])).collect())
            .collect();
        let mut transform: Vec<Vec<BigInt>> = (0..ncols)
            .map(|k| {
                (0..ncols)
                    .map(|i| if i == k { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();

        let mut rank = 0usize;
        for coord in 0..nrows {
            if rank == ncols {
                break;
            }
            loop {
                // generators ≥ rank with a nonzero entry at this coordinate
                let mut nonzero: Vec<usize> = (rank..ncols)
                    .filter(|&k| !basis[k][coord].is_zero())
                    .collect();
                match nonzero.len() {
                    0 => break,
                    1 => {
                        let k = nonzero[0];
                        basis.swap(rank, k);
                        transform.swap(rank, k);
                        if basis[rank][coord].is_negative() {
                            negate(&mut basis[rank]);
                            negate(&mut transform[rank]);
                        }
                        // keep earlier pivots reduced at this coordinate
                        for e in 0..rank {
                            let q = div_floor(&basis[e][coord], &basis[rank][coord]);
                            if !q.is_zero() {
                                let (pivot_vec, earlier) = split_two(&mut basis, rank, e);
                                sub_scaled(earlier, pivot_vec, &q, coord);
                                let (pivot_t, earlier_t) = split_two(&mut transform, rank, e);
                                sub_scaled(earlier_t, pivot_t, &q, 0);
                            }
                        }
                        pivots.push(coord);
                        rank += 1;
                        break;
                    }
                    _ => {
                        // reduce everything by the entry of least magnitude
                        nonzero.sort_by_key(|&k| basis[k][coord].abs());
                        let s = nonzero[0];
                        for &k in &nonzero[1..] {
                            let q = div_round(&basis[k][coord], &basis[s][coord]);
                            let (src, dst) = split_two(&mut basis, s, k);
                            sub_scaled(dst, src, &q, coord);
                            let (src_t, dst_t) = split_two(&mut transform, s, k);
                            sub_scaled(dst_t, src_t, &q, 0);
                        }
                    }
                }
            }
        }

        Self {
            nrows,
            ncols,
            basis,
            transform,
            pivots,
        }
    }

    /// Rank of `M` over `ℚ` (and the rank of the lattice).
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The tracked unimodular transformation, column by column.
    pub fn transform(&self) -> &[Vec<BigInt>] {
        &self.transform
    }

    /// The echelon basis, generator by generator.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Solves `Mx = D` over `ℚ`. Returns the witness, or `None` when `D`
    /// lies outside the column span.
    pub fn solve_rational(&self, rhs: &[i64]) -> Option<Vec<BigRational>> {
        assert_eq!(rhs.len(), self.nrows, "rhs length");
        let mut residual: Vec<BigRational> = rhs
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (gen, &coord) in self.pivots.iter().enumerate() {
            let c = &residual[coord] / BigRational::from_integer(self.basis[gen][coord].clone());
            for i in coord..self.nrows {
                let term = &c * BigRational::from_integer(self.basis[gen][i].clone());
                residual[i] -= term;
            }
            coeffs.push(c);
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(self.combine_rational(&coeffs))
    }

    /// Solves `Mx = D` over `ℤ`. Returns the witness, or `None` when `D`
    /// lies outside the column lattice.
    pub fn solve_integer(&self, rhs: &[i64]) -> Option<Vec<BigInt>> {
        assert_eq!(rhs.len(), self.nrows, "rhs length");
        let mut residual: Vec<BigInt> = rhs.iter().map(|&v| BigInt::from(v)).collect();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (gen, &coord) in self.pivots.iter().enumerate() {
            let (q, r) = num_integer::div_rem(residual[coord].clone(), self.basis[gen][coord].clone());
            if !r.is_zero() {
                return None;
            }
            for i in coord..self.nrows {
                let term = &q * &self.basis[gen][i];
                residual[i] -= term;
            }
            coeffs.push(q);
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![BigInt::zero(); self.ncols];
        for (c, t) in coeffs.iter().zip(&self.transform) {
            for (xi, ti) in x.iter_mut().zip(t) {
                *xi += c * ti;
            }
        }
        Some(x)
    }

    fn combine_rational(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.ncols];
        for (c, t) in coeffs.iter().zip(&self.transform) {
            for (xi, ti) in x.iter_mut().zip(t) {
                *xi += c * BigRational::from_integer(ti.clone());
            }
        }
        x
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// `dst -= q * src`, touching only coordinates from `from` onward.
fn sub_scaled(dst: &mut [BigInt], src: &[BigInt], q: &BigInt, from: usize) {
    if q.is_zero() {
        return;
    }
    for i in from..dst.len() {
        if !src[i].is_zero() {
            let term = q * &src[i];
            dst[i] -= term;
        }
    }
}

/// Two disjoint mutable borrows of `vecs[a]` (first) and `vecs[b]` (second).
fn split_two<T>(vecs: &mut [Vec<T>], a: usize, b: usize) -> (&[T], &mut [T]) {
    debug_assert_ne!(a, b);
    if a < b {
        let (left, right) = vecs.split_at_mut(b);
        (&left[a], &mut right[0])
    } else {
        let (left, right) = vecs.split_at_mut(a);
        (&right[0], &mut left[b])
    }
}

/// Quotient rounded to nearest, minimizing the remainder magnitude.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::div_rem(a.clone(), b.clone());
    let double_r: BigInt = &r * 2;
    if double_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i8]]) -> Vec<Vec<i8>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
        let n = a.len();
        let mut w: Vec<Vec<BigInt>> = a.to_vec();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            if w[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !w[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                w.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &w[k][k] * &w[i][j] - &w[i][k] * &w[k][j];
                    w[i][j] = num / &prev;
                }
            }
            prev = w[k][k].clone();
            for i in k + 1..n {
                w[i][k] = BigInt::zero();
            }
        }
        sign * w[n - 1][n - 1].clone()
    }

    #[test]
    fn parity_obstruction() {
        // 2x = 1: solvable over ℚ, not over ℤ
        let hnf = ColumnHnf::new(&m(&[&[2]]));
        assert_eq!(hnf.rank(), 1);
        assert!(hnf.solve_integer(&[1]).is_none());
        let x = hnf.solve_rational(&[1]).unwrap();
        assert_eq!(x[0], BigRational::new(BigInt::one(), BigInt::from(2)));
        assert!(hnf.solve_integer(&[4]).is_some());
    }

    #[test]
    fn integer_witness_verifies() {
        // rhs = M · (2, -1, 3) so an integer solution exists
        let mat = m(&[&[2, 3, 1], &[1, 0, -1], &[0, 4, 2]]);
        let rhs = [4i64, -1, 2];
        let hnf = ColumnHnf::new(&mat);
        let x = hnf.solve_integer(&rhs).unwrap();
        for (row, &d) in mat.iter().zip(&rhs) {
            let lhs: BigInt = row
                .iter()
                .zip(&x)
                .map(|(&a, b)| BigInt::from(a) * b)
                .sum();
            assert_eq!(lhs, BigInt::from(d));
        }
    }

    #[test]
    fn inconsistent_over_rationals() {
        let mat = m(&[&[1, 1], &[1, 1]]);
        let hnf = ColumnHnf::new(&mat);
        assert_eq!(hnf.rank(), 1);
        assert!(hnf.solve_rational(&[0, 1]).is_none());
        assert!(hnf.solve_integer(&[0, 1]).is_none());
        assert!(hnf.solve_rational(&[2, 2]).is_some());
    }

    #[test]
    fn transform_is_unimodular() {
        for mat in [
            m(&[&[2, 3, 1], &[1, 0, -1], &[0, 4, 2]]),
            m(&[&[1, 1, 0], &[0, 1, 1]]),
            m(&[&[6, 10, 15], &[4, 6, 9], &[2, 2, 3]]),
        ] {
            let hnf = ColumnHnf::new(&mat);
            let t: Vec<Vec<BigInt>> = hnf.transform().to_vec();
            // columns of the transform as a square matrix
            let size = t.len();
            let square: Vec<Vec<BigInt>> = (0..size)
                .map(|i| (0..size).map(|j| t[j][i].clone()).collect())
                .collect();
            let d = det_bareiss(&square);
            assert!(d == BigInt::one() || d == -BigInt::one(), "det {d}");
        }
    }

    #[test]
    fn echelon_shape() {
        let mat = m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let hnf = ColumnHnf::new(&mat);
        let pivots = hnf.pivots();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (gen, &coord) in pivots.iter().enumerate() {
            assert!(!hnf.basis()[gen][coord].is_zero());
            for earlier in 0..coord {
                assert!(hnf.basis()[gen][earlier].is_zero());
            }
        }
        for gen in hnf.rank()..3 {
            assert!(hnf.basis()[gen].iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn zero_matrix() {
        let hnf = ColumnHnf::new(&m(&[&[0, 0], &[0, 0]]));
        assert_eq!(hnf.rank(), 0);
        assert!(hnf.solve_integer(&[0, 0]).is_some());
        assert!(hnf.solve_integer(&[1, 0]).is_none());
    }
}
