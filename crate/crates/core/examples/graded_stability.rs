//! Energy of the homogeneous sine problem on uniform and graded meshes: the
//! A-norm never exceeds its initial value.

use fracdiff::{norm_a, sine_decay, solve, MeshKind, SchemeKind, SpatialGrid};

fn main() -> fracdiff::Result<()> {
    let grid = SpatialGrid::new(40)?;
    for alpha in [0.25, 0.5, 0.75] {
        let problem = sine_decay(alpha, 1.0)?;
        for kind in [MeshKind::Uniform, MeshKind::Graded(2.0), MeshKind::Graded(3.0)] {
            let lattice = solve(&problem, &grid, &kind.build(1.0, 80)?, SchemeKind::Transformed)?;
            let energies = lattice
                .levels()
                .iter()
                .map(|v| norm_a(v, grid.h()))
                .collect::<fracdiff::Result<Vec<_>>>()?;
            let peak = energies[1..].iter().cloned().fold(0.0, f64::max);
            println!(
                "alpha={alpha:<4} {kind:<10} |u0|_A={:.6}  max_n |u^n|_A={peak:.6}  |u^N|_A={:.6}",
                energies[0],
                energies.last().unwrap()
            );
        }
    }
    Ok(())
}
