//! Decides solvability of M x = D over GF(2), GF(p), Q, and Z, reproducing
//! the headline verdicts: solvable over Q and every odd prime field, but
//! not over GF(2) — and therefore not over the integers — at n = 4, while
//! n = 3 still admits an integer solution.
//!
//!     cargo run --release --example solve_fields

use simplex_obstruction::linalg::{solve_field, Field};
use simplex_obstruction::obstruction::build_matrix;

fn main() -> simplex_obstruction::Result<()> {
    for n in [3, 4] {
        let sys = build_matrix(n)?;
        println!(
            "n = {n} ({} rows x {} cols)",
            sys.num_rows(),
            sys.num_cols()
        );
        for (field, p) in [
            (Field::Gf2, None),
            (Field::Gfp, Some(3)),
            (Field::Gfp, Some(11)),
            (Field::Rational, None),
            (Field::Integer, None),
        ] {
            let report = solve_field(sys.rows(), sys.rhs(), field, p)?;
            let label = match p {
                Some(p) => format!("{field:?}({p})"),
                None => format!("{field:?}"),
            };
            println!(
                "  {label:<12} rank {} / augmented {} -> {}",
                report.rank,
                report.rank_augmented,
                if report.solvable { "solvable" } else { "unsolvable" }
            );
        }
    }
    Ok(())
}
