//! The compact operator H_h, the second difference, the discrete norms and a
//! tridiagonal solve with the stencil the time stepper uses.

use fracdiff::{
    apply_delta_x2, apply_hh, norm_a, norm_h1_semi, norm_l2h, solve_tridiagonal, GridFunction, SpatialGrid,
    TridiagonalSystem,
};
use std::f64::consts::PI;

fn main() -> fracdiff::Result<()> {
    for cells in [8, 16, 32, 64] {
        let grid = SpatialGrid::new(cells)?;
        let h = grid.h();
        let v = GridFunction::sample_dirichlet(grid.nodes(), |x| (PI * x).sin());
        let d2 = apply_delta_x2(&v, h)?;
        let hv = apply_hh(&v)?;
        // H_h u_xx ≈ δ² u to fourth order for smooth u.
        let uxx = GridFunction::sample_dirichlet(grid.nodes(), |x| -PI * PI * (PI * x).sin());
        let huxx = apply_hh(&uxx)?;
        let gap = (1..cells).map(|i| (huxx[i] - d2[i]).abs()).fold(0.0, f64::max);
        println!(
            "M={cells:>3}  |v|_h={:.6}  |v|_1={:.6}  |v|_A={:.6}  max|H u_xx - d2 u|={gap:.3e}  (Hv)_mid={:.6}",
            norm_l2h(&v, h),
            norm_h1_semi(&v, h),
            norm_a(&v, h)?,
            hv[cells / 2],
        );
    }

    let c = 2.5;
    let sys = TridiagonalSystem::constant(1.0 / 12.0 - c, 10.0 / 12.0 + 2.0 * c, vec![1.0; 7]);
    let x = solve_tridiagonal(&sys)?;
    let residual = sys.apply(&x).iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    println!("\nThomas solve of a 7x7 stepper system: residual {residual:.2e}");
    Ok(())
}
