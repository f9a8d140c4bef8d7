//! Exact solvability decisions for the obstruction system over GF(2),
//! GF(p), `ℚ`, and `ℤ`.

mod gf2;
mod gfp;
mod hnf;

pub use gf2::{eliminate_gf2, rank_gf2, BitRow, Gf2Elimination};
pub use gfp::{eliminate_gfp, is_prime, rank_gfp, GfpElimination};
pub use hnf::ColumnHnf;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// The coefficient domain of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Gf2,
    Gfp,
    Rational,
    Integer,
}

/// Outcome of one solvability decision. Witness entries are exact strings
/// ("3/2", "-1") so no precision is lost in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub field: Field,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub rank: usize,
    pub rank_augmented: usize,
    pub solvable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

fn check_dims(matrix: &[Vec<i8>], rhs: &[i64]) -> Result<()> {
    if matrix.len() != rhs.len() {
        return Err(Error::DimensionMismatch {
            left: matrix.len(),
            right: rhs.len(),
        });
    }
    Ok(())
}

/// Decides `Mx = D` over the requested field by Rouché–Capelli, returning a
/// witness when solvable. `p` is required exactly for [`Field::Gfp`].
pub fn solve_field(
    matrix: &[Vec<i8>],
    rhs: &[i64],
    field: Field,
    p: Option<u64>,
) -> Result<SolveReport> {
    check_dims(matrix, rhs)?;
    match (field, p) {
        (Field::Gf2, None) => {
            let elim = eliminate_gf2(matrix, rhs);
            Ok(SolveReport {
                field,
                p: None,
                rank: elim.rank(),
                rank_augmented: elim.rank_augmented(),
                solvable: elim.solvable(),
                witness: elim
                    .witness()
                    .map(|x| x.iter().map(|v| v.to_string()).collect()),
            })
        }
        (Field::Gfp, Some(p)) => {
            let elim = eliminate_gfp(matrix, rhs, p)?;
            Ok(SolveReport {
                field,
                p: Some(p),
                rank: elim.rank(),
                rank_augmented: elim.rank_augmented(),
                solvable: elim.solvable(),
                witness: elim
                    .witness()
                    .map(|x| x.iter().map(|v| v.to_string()).collect()),
            })
        }
        (Field::Rational, None) => {
            let hnf = ColumnHnf::new(matrix);
            let witness = hnf.solve_rational(rhs);
            let rank = hnf.rank();
            let solvable = witness.is_some();
            Ok(SolveReport {
                field,
                p: None,
                rank,
                rank_augmented: if solvable { rank } else { rank + 1 },
                solvable,
                witness: witness.map(|x| x.iter().map(format_rational).collect()),
            })
        }
        (Field::Integer, None) => solve_integer(matrix, rhs),
        (Field::Gfp, None) => Err(Error::InvalidInput("field gfp requires p".into())),
        (_, Some(p)) => Err(Error::InvalidInput(format!(
            "p = {p} given for a field that does not take a modulus"
        ))),
    }
}

/// Decides existence of an integer solution via Hermite normal form of the
/// column lattice, verifying any witness by exact re-multiplication.
pub fn solve_integer(matrix: &[Vec<i8>], rhs: &[i64]) -> Result<SolveReport> {
    check_dims(matrix, rhs)?;
    let hnf = ColumnHnf::new(matrix);
    let witness = hnf.solve_integer(rhs);
    if let Some(x) = &witness {
        verify_integer_witness(matrix, rhs, x)?;
    }
    let rank = hnf.rank();
    let solvable = witness.is_some();
    Ok(SolveReport {
        field: Field::Integer,
        p: None,
        rank,
        // over ℤ the Rouché–Capelli reading does not apply; report the
        // rational augmented rank, which the same lattice basis decides
        rank_augmented: if hnf.solve_rational(rhs).is_some() {
            rank
        } else {
            rank + 1
        },
        solvable,
        witness: witness.map(|x| x.iter().map(|v| v.to_string()).collect()),
    })
}

fn verify_integer_witness(matrix: &[Vec<i8>], rhs: &[i64], x: &[BigInt]) -> Result<()> {
    for (i, (row, &d)) in matrix.iter().zip(rhs).enumerate() {
        let lhs: BigInt = row
            .iter()
            .zip(x)
            .map(|(&a, b)| BigInt::from(a) * b)
            .sum();
        if lhs != BigInt::from(d) {
            return Err(Error::Internal(format!(
                "integer witness fails re-multiplication at row {i}"
            )));
        }
    }
    Ok(())
}

fn format_rational(v: &BigRational) -> String {
    if v.denom().abs() == BigInt::from(1) {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses witness strings written by [`solve_field`] back into rationals.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((num, den)) => Ok(BigRational::new(parse_int(num)?, parse_int(den)?)),
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}
