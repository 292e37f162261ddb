// Mapped Gauss rules: how beta and gamma move the nodes, and what the rule integrates exactly.

use fraclag::approximation::Family;
use fraclag::special::gamma::gamma;
use fraclag::FracParams;

pub fn run_example() -> fraclag::Result<()> {
    let m = 12;
    println!("{m}-point rules, theta = 0");
    for (beta, g) in [(0.0, 1.0), (0.0, 1.0 / 3.0), (20.0, 1.0 / 3.0)] {
        let rule = Family::Fractional(FracParams::new(0.0, beta, g)?).rule(m)?;
        println!(
            "  beta={beta:>4} gamma={g:.3}: first {:.3e}, last {:.3e}",
            rule.x[0],
            rule.x[m - 1]
        );
    }

    // fractional monomials x^{k gamma} up to k = 2M-1 integrate exactly
    let p = FracParams::new(0.5, 5.0, 0.25)?;
    let rule = Family::Fractional(p).rule(m)?;
    let mut worst = 0.0f64;
    for k in 0..2 * m {
        let s: f64 = (0..rule.len()).map(|i| rule.weighted(i, rule.x[i].powf(k as f64 * p.gamma))).sum();
        let exact = gamma(k as f64 + p.theta + 1.0) / (p.beta + 1.0).powi(k as i32);
        worst = worst.max((s / exact - 1.0).abs());
    }
    println!("moment exactness (theta=0.5, beta=5, gamma=1/4): max rel err {worst:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
