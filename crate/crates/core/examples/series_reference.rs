//! Single-mode series solution E_α(−π² t^α) sin(πx) versus the solver, and
//! what happens outside the series' accuracy envelope.

use fracdiff::{series_reference, sine_decay, solve, SchemeKind, SpatialGrid, TemporalMesh};

fn main() -> fracdiff::Result<()> {
    let (alpha, t) = (0.5, 0.01);
    let series = series_reference(&[1.0], alpha, 1)?;
    let problem = sine_decay(alpha, t)?;
    let grid = SpatialGrid::new(64)?;
    for n in [16, 64, 256] {
        let lattice = solve(&problem, &grid, &TemporalMesh::uniform(t, n)?, SchemeKind::Transformed)?;
        let mut gap = 0.0f64;
        for (&x, &u) in grid.nodes().iter().zip(lattice.final_level().iter()) {
            gap = gap.max((u - series.eval(x, t)?).abs());
        }
        println!("N = {n:>3}: max |u - series| at t = {t} is {gap:.3e}");
    }
    for t in [0.1, 0.5, 1.0] {
        match series.eval(0.5, t) {
            Ok(v) => println!("series u(0.5, {t}) = {v:.12}"),
            Err(e) => println!("series u(0.5, {t}) refused: {e}"),
        }
    }
    Ok(())
}
