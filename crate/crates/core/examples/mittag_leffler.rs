// Mittag-Leffler values across its evaluation regimes.

use fraclag::special::mittag_leffler::mittag_leffler_with_regime;

pub fn run_example() -> fraclag::Result<()> {
    for (a, b, z) in [(1.0, 1.0, 1.0), (0.5, 1.0, -1.0), (1.0 / 3.0, 1.0, -2.0), (1.0 / 3.0, 4.0 / 3.0, -30.0), (0.25, 1.0, -0.5)] {
        let (v, regime) = mittag_leffler_with_regime(a, b, z)?;
        println!("E_({a:.4},{b:.4})({z:>5}) = {v:.15e}  [{regime:?}]");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
