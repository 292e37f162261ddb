// Projecting sin(x^{1/3}): a basis whose gamma matches the singularity converges
// spectrally, the classical gamma = 1 basis only algebraically.

use fraclag::approximation::{project, weighted_l2_error};
use fraclag::special::test_functions::{TestFunction, TestFunctionId};
use fraclag::FracParams;

pub fn run_example() -> fraclag::Result<()> {
    let f = TestFunction::new(TestFunctionId::U1Sin, 1.0 / 3.0)?;
    let u = |x: f64| f.eval(x).unwrap_or(f64::NAN);
    println!("{:>4} {:>14} {:>14}", "M", "gamma=1/3", "gamma=1");
    for m in [4, 8, 16, 32] {
        let q = 4 * m + 64;
        let mut row = Vec::new();
        for g in [1.0 / 3.0, 1.0] {
            let p = FracParams::new(0.0, 20.0, g)?;
            let e = project(u, m, &p, q)?;
            row.push(weighted_l2_error(u, &e, q)?);
        }
        println!("{m:>4} {:>14.3e} {:>14.3e}", row[0], row[1]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
