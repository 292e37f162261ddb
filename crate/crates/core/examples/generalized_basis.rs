// The x^eta prefactor lets the generalized family represent 1/sqrt(x) exactly,
// which no fractional basis with theta = 0 can do in its own weighted space.

use fraclag::approximation::{gen_interpolate, gen_project, weighted_l2_error};
use fraclag::generalized::eval_gflf;
use fraclag::GenParams;

pub fn run_example() -> fraclag::Result<()> {
    let p = GenParams::new(0.0, 2.0, 0.5, 8.0)?;
    println!("eta = {}", p.eta());
    println!("first functions at x = 0.3: {:?}", (0..4).map(|m| eval_gflf(&p, m, 0.3)).collect::<fraclag::Result<Vec<_>>>()?);

    let u = |x: f64| x.powf(-0.5);
    let m = 16;
    let q = 4 * m + 64;
    let proj = gen_project(u, m, &p, q)?;
    let interp = gen_interpolate(u, m, &p)?;
    println!("leading coefficients {:?}", &proj.coeffs[..3]);
    println!("projection error    {:.2e}", weighted_l2_error(u, &proj, q)?);
    println!("interpolation error {:.2e}", weighted_l2_error(u, &interp, q)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
