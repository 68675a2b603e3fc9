//! A graded-mesh sweep written to CSV, the same format `fracdiff converge`
//! produces.
//!
//!     cargo run --example sweep_to_csv -- /tmp/sweep.csv

use std::fs::File;

use fracdiff::{run_sweep, MeshKind, SweepConfig};

fn main() -> fracdiff::Result<()> {
    let mut cfg = SweepConfig::manufactured(vec![0.3, 0.6], 50, vec![20, 40, 80, 160]);
    cfg.mesh_kind = MeshKind::Graded(1.5);
    let report = run_sweep(&cfg)?;
    match std::env::args().nth(1) {
        Some(path) => {
            report.write_csv(File::create(&path)?)?;
            eprintln!("wrote {} rows to {path}", report.rows.len());
        }
        None => print!("{}", report.to_csv_string()),
    }
    Ok(())
}
