//! Uniform and graded temporal meshes next to a spatial grid.

use fracdiff::{SpatialGrid, TemporalMesh};

fn main() -> fracdiff::Result<()> {
    let grid = SpatialGrid::new(8)?;
    println!("spatial grid: h = {}, nodes = {:?}", grid.h(), grid.nodes());

    let uniform = TemporalMesh::uniform(1.0, 8)?;
    let graded = TemporalMesh::graded(1.0, 8, 2.0)?;
    println!("\n{:>3} {:>10} {:>10} {:>10}", "n", "uniform", "graded", "tau_n");
    for n in 0..=8 {
        let tau = if n == 0 { 0.0 } else { graded.tau(n) };
        println!("{n:>3} {:>10.6} {:>10.6} {:>10.6}", uniform.t(n), graded.t(n), tau);
    }
    println!(
        "graded tau_max = {:.6}, uniform? {}",
        graded.tau_max(),
        graded.is_uniform()
    );
    Ok(())
}
