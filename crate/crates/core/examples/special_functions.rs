//! Gamma and Mittag-Leffler evaluations, including the cancellation
//! diagnostic that tells you when the Taylor series stops being trustworthy.

use fracdiff::specialfn::{mittag_leffler_series, MLParams};
use fracdiff::{gamma, mittag_leffler};

fn main() -> fracdiff::Result<()> {
    for x in [0.25, 0.5, 1.5, 3.3, 10.0] {
        println!("Gamma({x}) = {:.16e}", gamma(x)?);
    }
    println!(
        "E_1(1) = {} (e = {})",
        mittag_leffler(&MLParams::new(1.0, 1.0))?,
        std::f64::consts::E
    );

    println!(
        "\n{:>5} {:>7} {:>24} {:>6} {:>10}",
        "beta", "z", "E_beta(z)", "terms", "cancel"
    );
    for (beta, z) in [(0.5, -1.0), (0.5, -5.0), (0.75, 3.0), (0.9, -20.0), (0.25, -2.0)] {
        let s = mittag_leffler_series(&MLParams::new(beta, z))?;
        println!(
            "{beta:>5} {z:>7} {:>24.16e} {:>6} {:>10.2e}",
            s.value,
            s.terms,
            s.cancellation_ratio()
        );
    }

    match mittag_leffler(&MLParams::new(0.5, 10.0).with_max_terms(5)) {
        Ok(v) => println!("unexpected: {v}"),
        Err(e) => println!("\nwith five terms: {e}"),
    }
    Ok(())
}
