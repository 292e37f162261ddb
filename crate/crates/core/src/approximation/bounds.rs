use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::laguerre::{check_theta, gamma_ratio_bound};
use crate::special::gamma::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Projection,
    Interpolation,
    Stability,
    Quadrature,
}

/// `C M^(-mu/2)` form of the projection factor, valid for `theta = s = 0`, `mu < M + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticForm {
    pub constant: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    /// `false` when the result omits an unspecified multiplicative constant.
    pub constant_included: bool,
    pub asymptotic: Option<AsymptoticForm>,
}

/// `min(mu, M + 1)`.
pub fn mu_hat(max_degree: usize, mu: usize) -> usize {
    mu.min(max_degree + 1)
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

fn check_log_m(max_degree: usize) -> Result<()> {
    if max_degree < 2 {
        return Err(invalid(format!("the log M factor needs M >= 2, got {max_degree}")));
    }
    Ok(())
}

fn check_norm(name: &str, v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(invalid(format!("{name} must be a finite non-negative norm, got {v}")));
    }
    Ok(())
}

/// Factorial factor `sqrt((M - mu_hat + 1)! / (M - s + 1)!)` of the projection
/// estimate; for `theta = s = 0` and `mu < M + 1` the asymptotic constant form
/// is reported alongside.
pub fn projection_bound(max_degree: usize, mu: usize, s: usize, theta: f64) -> Result<BoundReport> {
    check_theta(theta)?;
    let mh = mu_hat(max_degree, mu);
    if s > mh {
        return Err(invalid(format!("derivative order s = {s} exceeds mu_hat = {mh}")));
    }
    let value = (0.5 * (ln_factorial(max_degree + 1 - mh) - ln_factorial(max_degree + 1 - s))).exp();
    let asymptotic = if theta == 0.0 && s == 0 && mu < max_degree + 1 && max_degree >= 1 {
        let m = max_degree as f64;
        let mu_f = mu as f64;
        let bound = gamma_ratio_bound(max_degree as u32, 2.0 - mu_f, 2.0)?;
        let constant = (bound * m.powf(mu_f)).sqrt();
        Some(AsymptoticForm { constant, value: constant * m.powf(-mu_f / 2.0) })
    } else {
        None
    };
    Ok(BoundReport { kind: BoundKind::Projection, value, constant_included: true, asymptotic })
}

/// The generalized projection estimate shares the factorial factor.
pub fn gen_projection_bound(max_degree: usize, mu: usize, s: usize) -> Result<BoundReport> {
    let mut r = projection_bound(max_degree, mu, s, 1.0)?;
    r.asymptotic = None;
    Ok(r)
}

/// `sqrt((M + 1 - mu_hat)! / M!) (a + 2 sqrt(log M) b)` with
/// `a = ||D^mu_hat v||` at weight `theta + mu - 1` and `b` the same at `theta + mu`.
pub fn interpolation_bound(
    max_degree: usize,
    mu: usize,
    theta: f64,
    seminorm_hi: f64,
    seminorm_hi_minus: f64,
) -> Result<BoundReport> {
    check_theta(theta)?;
    check_log_m(max_degree)?;
    check_norm("seminorm_hi", seminorm_hi)?;
    check_norm("seminorm_hi_minus", seminorm_hi_minus)?;
    let mh = mu_hat(max_degree, mu);
    let factor = (0.5 * (ln_factorial(max_degree + 1 - mh) - ln_factorial(max_degree))).exp();
    let log_m = (max_degree as f64).ln();
    Ok(BoundReport {
        kind: BoundKind::Interpolation,
        value: factor * (seminorm_hi_minus + 2.0 * log_m.sqrt() * seminorm_hi),
        constant_included: false,
        asymptotic: None,
    })
}

/// `M^(-1/2) d1 + 2 sqrt(log M) n1` with `d1 = ||D v||` at weight `theta`
/// and `n1` the first-order Sobolev norm.
pub fn stability_bound(max_degree: usize, d1: f64, n1: f64) -> Result<BoundReport> {
    check_log_m(max_degree)?;
    check_norm("d1", d1)?;
    check_norm("n1", n1)?;
    let m = max_degree as f64;
    Ok(BoundReport {
        kind: BoundKind::Stability,
        value: d1 / m.sqrt() + 2.0 * m.ln().sqrt() * n1,
        constant_included: false,
        asymptotic: None,
    })
}

/// `sqrt(Gamma(theta + 1)) ||I v - v||`.
pub fn quadrature_error_bound(theta: f64, interp_error: f64) -> Result<f64> {
    check_theta(theta)?;
    check_norm("interp_error", interp_error)?;
    Ok((0.5 * ln_gamma(theta + 1.0)).exp() * interp_error)
}
