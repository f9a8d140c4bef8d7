//! Elements of the symmetric group `S_n` in one-line notation.
//!
//! The derived `Ord` on the image tuple is the lexicographic order used as
//! the fixed total order on `S_n` throughout the crate.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

/// Largest supported `n`; enumeration is factorial in `n`.
pub const MAX_N: usize = 8;

/// A permutation of `{1, …, n}`, stored as its image tuple: entry `i`
/// (0-based) holds `g(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u8>,
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<u8>::deserialize(deserializer)?;
        Permutation::from_images(images).map_err(D::Error::custom)
    }
}

impl Permutation {
    /// Builds a permutation from 1-based images, validating bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty image tuple".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::InvalidInput(format!(
                    "images {images:?} are not a bijection of {{1,…,{n}}}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n as u8).collect(),
        }
    }

    /// Builds the permutation from a cycle, fixing everything outside it.
    pub fn from_cycle(n: usize, cycle: &[u8]) -> Result<Self> {
        let mut images: Vec<u8> = (1..=n as u8).collect();
        for k in 0..cycle.len() {
            let from = cycle[k] as usize;
            let to = cycle[(k + 1) % cycle.len()];
            if from == 0 || from > n {
                return Err(Error::InvalidInput(format!("cycle entry {from} out of range")));
            }
            images[from - 1] = to;
        }
        Self::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `g(i)` for 1-based `i`.
    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize - 1]
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `g∘h`, acting as `(g∘h)(i) = g(h(i))`.
    pub fn compose(&self, h: &Permutation) -> Result<Permutation> {
        if self.n() != h.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: h.n(),
            });
        }
        Ok(Permutation {
            images: h.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    /// Parity of the permutation: `+1` for even, `-1` for odd.
    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.n()];
        let mut sign = 1i8;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Cycles of the permutation, each starting at its minimal element,
    /// ordered by that element. Fixed points appear as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u8 + 1);
                i = self.images[i] as usize - 1;
            }
            out.push(cycle);
        }
        out
    }
}

/// All `n!` permutations of `{1,…,n}`, sorted lexicographically by image
/// tuple. The identity comes first.
pub fn enumerate_sn(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > MAX_N {
        return Err(Error::SizeLimit { n, min: 1, max: MAX_N });
    }
    let mut out = Vec::new();
    let mut current = Permutation::identity(n);
    loop {
        out.push(current.clone());
        if !next_lex(&mut current.images) {
            break;
        }
    }
    Ok(out)
}

/// Advances `images` to the next tuple in lexicographic order.
fn next_lex(images: &mut [u8]) -> bool {
    let n = images.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && images[i - 1] >= images[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while images[j] <= images[i - 1] {
        j -= 1;
    }
    images.swap(i - 1, j);
    images[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[u8]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_lengths() {
        assert_eq!(enumerate_sn(1).unwrap().len(), 1);
        assert_eq!(enumerate_sn(3).unwrap().len(), 6);
        assert_eq!(enumerate_sn(4).unwrap().len(), 24);
    }

    #[test]
    fn enumerate_order() {
        let s3 = enumerate_sn(3).unwrap();
        assert_eq!(s3[0], p(&[1, 2, 3]));
        assert_eq!(s3[5], p(&[3, 2, 1]));
        assert!(s3.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumerate_size_guard() {
        assert!(matches!(enumerate_sn(0), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_sn(9), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn compose_hand_table() {
        // (g∘h)(i) = g(h(i)) with g = (2,1,3,4), h = (1,3,2,4)
        let g = p(&[2, 1, 3, 4]);
        let h = p(&[1, 3, 2, 4]);
        assert_eq!(g.compose(&h).unwrap(), p(&[2, 3, 1, 4]));
    }

    #[test]
    fn compose_identity_and_inverse() {
        let id = Permutation::identity(4);
        let g = p(&[3, 1, 4, 2]);
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().compose(&g).unwrap().is_identity());
    }

    #[test]
    fn compose_dimension_error() {
        let g = p(&[2, 1]);
        let h = p(&[1, 2, 3]);
        assert!(matches!(
            g.compose(&h),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_cycle() {
        assert_eq!(p(&[2, 3, 1]).inverse(), p(&[3, 1, 2]));
        assert!(Permutation::identity(5).inverse().is_identity());
    }

    #[test]
    fn sign_values() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(p(&[2, 1, 3, 4]).sign(), -1);
        // 4-cycle (1 2 3 4)
        assert_eq!(p(&[2, 3, 4, 1]).sign(), -1);
        // 3-cycle
        assert_eq!(p(&[2, 3, 1]).sign(), 1);
    }

    #[test]
    fn sign_homomorphism_exhaustive_s4() {
        let s4 = enumerate_sn(4).unwrap();
        for g in &s4 {
            for h in &s4 {
                let gh = g.compose(h).unwrap();
                assert_eq!(gh.sign(), g.sign() * h.sign());
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive_small_n() {
        for n in 1..=4 {
            let sn = enumerate_sn(n).unwrap();
            let id = Permutation::identity(n);
            for g in &sn {
                assert_eq!(g.compose(&id).unwrap(), *g);
                assert_eq!(id.compose(g).unwrap(), *g);
                assert!(g.compose(&g.inverse()).unwrap().is_identity());
                for h in &sn {
                    for k in &sn {
                        let left = g.compose(h).unwrap().compose(k).unwrap();
                        let right = g.compose(&h.compose(k).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn cycles_of_mixed_permutation() {
        let g = p(&[2, 1, 4, 5, 3]);
        assert_eq!(g.cycles(), vec![vec![1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn from_cycle_roundtrip() {
        let c = Permutation::from_cycle(4, &[1, 2]).unwrap();
        assert_eq!(c, p(&[2, 1, 3, 4]));
        let c4 = Permutation::from_cycle(4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(c4, p(&[2, 3, 4, 1]));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn serde_one_based_array() {
        let g = p(&[2, 3, 1]);
        assert_eq!(serde_json::to_string(&g).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, g);
    }
}
