//! Product-integration weights for the kernel t^{α−1}/Γ(α) and the midpoint
//! rule applied to t², compared with the exact Beta-function value.

use fracdiff::{gamma, midpoint_convolution, weights_row, TemporalMesh};

fn main() -> fracdiff::Result<()> {
    let alpha = 0.5;
    let mesh = TemporalMesh::uniform(1.0, 5)?;
    let row = weights_row(&mesh, alpha, 5)?;
    println!("a_k^5 = {:?}", row.as_slice());
    println!(
        "sum = {:.15}  t^α/Γ(α+1) = {:.15}",
        row.sum(),
        1.0 / gamma(alpha + 1.0)?
    );

    let exact = 2.0 / gamma(alpha + 3.0)?;
    println!("\n{:>6} {:>12} {:>8}", "N", "error", "order");
    let mut prev: Option<f64> = None;
    for n in [16usize, 64, 256, 1024, 4096] {
        let mesh = TemporalMesh::uniform(1.0, n)?;
        let row = weights_row(&mesh, alpha, n)?;
        let g: Vec<f64> = mesh.points().iter().map(|t| t * t).collect();
        let err = (midpoint_convolution(&g, &row)? - exact).abs();
        let order = prev
            .map(|p| format!("{:.3}", (p / err).log2() / 2.0))
            .unwrap_or_else(|| "*".into());
        println!("{n:>6} {err:>12.4e} {order:>8}");
        prev = Some(err);
    }
    Ok(())
}
