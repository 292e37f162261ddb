// Fitted algebraic rate for a target of limited mapped regularity, against the
// rate predicted from its finite seminorms.

use fraclag::experiments::{fit_rate, Command, RunConfig};
use fraclag::special::test_functions::MappedPowerTarget;
use fraclag::FracParams;

pub fn run_example() -> fraclag::Result<()> {
    let config = RunConfig::new(Command::Rates);
    let degrees: Vec<usize> = (16..=40).step_by(8).collect();
    for beta in [1.0, 20.0] {
        let target = MappedPowerTarget { p: Some(7.0 / 3.0), params: FracParams::new(0.0, beta, 0.5)? };
        let fit = fit_rate(&target, &degrees, &config)?;
        for pt in &fit.points {
            println!("  {} beta={beta} M={:>2} error {:.3e}", target.label(), pt.m, pt.error);
        }
        println!("  mu = {:?}, predicted slope {:?}, fitted {:.3?}", fit.scan.mu, fit.predicted, fit.slope);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
