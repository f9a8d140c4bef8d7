//! Winding numbers of block-unitary paths: builds an explicit edge path
//! with prescribed integer windings, prints its per-block invariants
//! (winding w, upper winding number, defect), and demonstrates the
//! structural invariances on a random path.
//!
//!     cargo run --release --example winding_invariants

use rand::SeedableRng;
use simplex_obstruction::partition::Partition;
use simplex_obstruction::paths::{edge_path, random_block_path};
use simplex_obstruction::perm::Permutation;
use simplex_obstruction::skeleton::Subsimplex;

fn main() -> simplex_obstruction::Result<()> {
    // the edge from the identity to the 4-cycle: one block {1,2,3,4}
    let id = Permutation::identity(4);
    let cycle = Permutation::from_cycle(4, &[1, 2, 3, 4])?;
    let edge = Subsimplex::new(vec![id, cycle])?;
    for target in [0i64, 1, -2] {
        let path = edge_path(&edge, &[target], 1024)?;
        let report = path.winding(&[1, 2, 3, 4])?;
        println!(
            "edge path, target uwn {target:>2}: w = {:>7.4}, uwn = {:>2}, defect = {:.4}",
            report.w, report.uwn, report.defect
        );
    }
    println!("(even blocks always carry defect 1/2; odd blocks defect 0)\n");

    let partition = Partition::from_blocks(vec![vec![1, 2], vec![3, 4]])?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    let path = random_block_path(&partition, 512, &mut rng);
    for block in partition.blocks() {
        let w = path.winding(block)?.w;
        let reversed = path.reversed().winding(block)?.w;
        println!(
            "random path block {block:?}: w = {w:>8.5}, reversed = {reversed:>8.5} (antisymmetry)"
        );
    }
    let coarse = Partition::from_blocks(vec![vec![1, 2, 3, 4]])?;
    let total: f64 = partition
        .blocks()
        .iter()
        .map(|b| path.winding(b).unwrap().w)
        .sum();
    let full = path.coarsened(coarse)?.winding(&[1, 2, 3, 4])?.w;
    println!("block-splitting: sum over blocks {total:.5} = full determinant {full:.5}");
    Ok(())
}
