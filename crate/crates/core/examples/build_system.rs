//! Assembles the obstruction system M x = D for the 2-skeleton of the
//! S_n-simplex and exports it as files (Matrix Market + JSON).
//!
//!     cargo run --release --example build_system [n] [out-dir]

use simplex_obstruction::obstruction::{build_matrix, export_system};

fn main() -> simplex_obstruction::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(4, |a| a.parse().expect("n must be an integer"));
    let out = std::path::PathBuf::from(args.next().unwrap_or_else(|| "obstruction-out".into()));

    let sys = build_matrix(n)?;
    println!(
        "n = {n}: {} columns (edge, block), {} rows (face, block)",
        sys.num_cols(),
        sys.num_rows()
    );
    let nonzeros: usize = sys
        .rows()
        .iter()
        .map(|r| r.iter().filter(|&&v| v != 0).count())
        .sum();
    println!("matrix nonzeros: {nonzeros}");
    let even_blocks = sys.delta_numerators().iter().filter(|&&v| v == 1).count();
    println!("delta: {even_blocks} half-entries (even blocks), rest zero");

    std::fs::create_dir_all(&out).expect("create output directory");
    export_system(&sys, &out)?;
    println!("wrote M.mtx, delta.json, D.json, indices.json to {}", out.display());
    Ok(())
}
