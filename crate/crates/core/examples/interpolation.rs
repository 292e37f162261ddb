// Interpolation at the mapped Gauss nodes and the quadrature it induces.

use fraclag::approximation::{interpolate, quadrature_error, quadrature_error_bound, weighted_l2_error, Family};
use fraclag::special::test_functions::{TestFunction, TestFunctionId};
use fraclag::FracParams;

pub fn run_example() -> fraclag::Result<()> {
    let p = FracParams::new(0.0, 5.0, 0.25)?;
    let f = TestFunction::new(TestFunctionId::U3Ml, 0.25)?;
    let u = |x: f64| f.eval(x).unwrap_or(f64::NAN);
    let family = Family::Fractional(p);

    // reference value of the weighted integral from a much finer rule
    let fine = family.rule(512)?;
    let exact: f64 = (0..fine.len()).map(|i| fine.weighted(i, u(fine.x[i]))).sum();

    for m in [4, 8, 16, 24] {
        let e = interpolate(u, m, &p)?;
        let err = weighted_l2_error(u, &e, 4 * m + 64)?;
        let quad = quadrature_error(u, m, &family, exact)?;
        println!(
            "M={m:>2}  L2 {err:.3e}  quadrature {quad:.3e} <= {:.3e}",
            quadrature_error_bound(p.theta, err)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
