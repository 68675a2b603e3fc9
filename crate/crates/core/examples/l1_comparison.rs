//! Transformed scheme against the L1 baseline on the same problem and meshes.

use fracdiff::{manufactured_sin, max_lattice_error, solve, SchemeKind, SpatialGrid, TemporalMesh};

fn main() -> fracdiff::Result<()> {
    let grid = SpatialGrid::new(100)?;
    println!("{:>5} {:>5} {:>12} {:>12}", "alpha", "N", "transformed", "l1");
    for alpha in [0.25, 0.5, 0.75] {
        let problem = manufactured_sin(alpha)?;
        let exact = problem
            .exact_u
            .clone()
            .expect("manufactured problem has an exact solution");
        for n in [40, 160, 640] {
            let mesh = TemporalMesh::uniform(1.0, n)?;
            let e = |scheme| solve(&problem, &grid, &mesh, scheme).map(|l| max_lattice_error(&l, exact.as_ref()));
            println!(
                "{alpha:>5} {n:>5} {:>12.4e} {:>12.4e}",
                e(SchemeKind::Transformed)?,
                e(SchemeKind::L1Baseline)?
            );
        }
    }
    Ok(())
}
