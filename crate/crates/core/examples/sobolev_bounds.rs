// Mapped-derivative seminorms of exp(-x^gamma) and the projection error
// estimate they feed, next to the measured error.

use fraclag::approximation::{derivative_norm, mu_hat, project, projection_bound, sobolev_seminorms, Family};
use fraclag::special::test_functions::{TestFunction, TestFunctionId};
use fraclag::FracParams;

pub fn run_example() -> fraclag::Result<()> {
    let p = FracParams::new(0.0, 5.0, 0.5)?;
    let f = TestFunction::new(TestFunctionId::U2Exp, 0.5)?;
    let derivs = |x: f64| f.mapped_derivatives(&p, x, 6);
    let report = sobolev_seminorms(&Family::Fractional(p), 6, 256, derivs)?;
    let shown: Vec<String> = report.seminorms.iter().map(|s| format!("{s:.4e}")).collect();
    println!("|u|_r, r = 0..6: {}", shown.join(" "));

    let u = |x: f64| f.eval(x).unwrap_or(f64::NAN);
    let mu = 4;
    for m in [2, 4, 8, 16] {
        let q = 4 * m + 64;
        let e = project(u, m, &p, q)?;
        let measured = derivative_norm(&Family::Fractional(p), 0, 0, q, |x| {
            derivs(x).map(|mut d| {
                d[0] -= e.evaluate(x);
                d
            })
        })?;
        let mh = mu_hat(m, mu);
        let bound = projection_bound(m, mu, 0, p.theta)?.value * report.seminorms[mh];
        println!("M={m:>2} measured {measured:.3e}  bound {bound:.3e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
