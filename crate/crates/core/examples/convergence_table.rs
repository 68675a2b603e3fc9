//! The manufactured-solution convergence table: u = sin(πx) t², M = 100,
//! T = 1, uniform mesh, N = 10..640.
//!
//!     cargo run --release --example convergence_table

use fracdiff::{run_sweep, OutputFormat, SweepConfig};

fn main() -> fracdiff::Result<()> {
    let cfg = SweepConfig::manufactured(vec![0.25, 0.5, 0.75], 100, vec![10, 20, 40, 80, 160, 320, 640]);
    let report = run_sweep(&cfg)?;
    report.write(std::io::stdout().lock(), OutputFormat::Table)?;
    Ok(())
}
