//! The bridge between numerics and the integer system: around any 2-face,
//! the loop composed of three edge paths winds on each block by exactly
//! the corresponding entry of M ŵ − D, where ŵ collects the integer
//! winding targets of the edges.
//!
//!     cargo run --release --example face_loops

use rand::{Rng, SeedableRng};
use simplex_obstruction::obstruction::build_matrix;
use simplex_obstruction::paths::{edge_path, face_loop};

fn main() -> simplex_obstruction::Result<()> {
    let sys = build_matrix(4)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);

    // pick a face whose partition has a nontrivial block
    let face = sys.row_index.entries()[100].cell.clone();
    println!("face vertices: {:?}", face.vertices());
    println!("face partition: {:?}", face.partition().blocks());

    let edges = face.boundary_edges().expect("2-face");
    let mut w_hat = vec![0i64; sys.num_cols()];
    let mut paths = Vec::new();
    for edge in &edges {
        let targets: Vec<i64> = (0..edge.partition().len())
            .map(|_| rng.gen_range(-2i64..=2))
            .collect();
        println!("  edge {:?}: targets {targets:?}", edge.vertices());
        for (block, &t) in edge.partition().blocks().iter().zip(&targets) {
            w_hat[sys.col_index.ordinal(edge, block).unwrap()] = t;
        }
        paths.push(edge_path(edge, &targets, 1024)?);
    }
    let gamma = face_loop(&face, &paths[0], &paths[1], &paths[2])?;

    for block in face.partition().blocks() {
        let row = sys.row_index.ordinal(&face, block).unwrap();
        let residual: i64 = sys
            .row(row)
            .iter()
            .zip(&w_hat)
            .map(|(&m, &w)| i64::from(m) * w)
            .sum::<i64>()
            - sys.rhs()[row];
        let numeric = gamma.winding(block)?.w;
        println!(
            "block {block:?}: numeric winding {numeric:>9.6}, exact M*w - D entry {residual:>3}, \
             deviation {:.2e}",
            (numeric - residual as f64).abs()
        );
    }
    Ok(())
}
