//! Scaled fractional Laguerre functions
//! `L_m^(theta,beta,gamma)(x) = L_m^(theta)((beta + 1) x^gamma)`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::laguerre::{self, check_theta, weighted_value};

/// Parameter triple of the fractional family.
///
/// `gamma = 1` is admitted as the classical limit (the map becomes linear);
/// see [`FracParams::classical_limit`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracParams {
    pub theta: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl FracParams {
    pub fn new(theta: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = FracParams { theta, beta, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_theta(self.theta)?;
        if !(self.beta.is_finite() && self.beta > -1.0) {
            return Err(invalid(format!("beta must be finite and > -1, got {}", self.beta)));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(invalid(format!("gamma must lie in (0, 1], got {}", self.gamma)));
        }
        Ok(())
    }

    pub fn classical_limit(&self) -> bool {
        self.gamma == 1.0
    }

    /// Same `beta`, `gamma` with `theta` shifted by `k` (the weight of the
    /// `k`-th mapped-derivative seminorm).
    pub fn shifted(&self, k: usize) -> Self {
        FracParams { theta: self.theta + k as f64, ..*self }
    }

    pub(crate) fn y(&self, x: f64) -> f64 {
        (self.beta + 1.0) * x.powf(self.gamma)
    }

    pub(crate) fn x(&self, y: f64) -> f64 {
        (y / (self.beta + 1.0)).powf(1.0 / self.gamma)
    }

    /// `x^(1-gamma) / ((beta + 1) gamma)`, the factor of the mapped derivative.
    pub fn derivative_factor(&self, x: f64) -> f64 {
        x.powf(1.0 - self.gamma) / ((self.beta + 1.0) * self.gamma)
    }
}

fn positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, x })
    }
}

fn non_negative(what: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, x })
    }
}

/// `Y(x) = (beta + 1) x^gamma`.
pub fn map_forward(params: &FracParams, x: f64) -> Result<f64> {
    params.validate()?;
    positive("map_forward", x)?;
    Ok(params.y(x))
}

/// `(y / (beta + 1))^(1/gamma)`.
pub fn map_inverse(params: &FracParams, y: f64) -> Result<f64> {
    params.validate()?;
    positive("map_inverse", y)?;
    Ok(params.x(y))
}

/// `L_m^(theta,beta,gamma)(x)`; at `x = 0` the limit `L_m^(theta)(0)`.
pub fn eval_flf(params: &FracParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    non_negative("eval_flf", x)?;
    Ok(laguerre::laguerre_unchecked(params.theta, m, params.y(x)))
}

/// `[L_0(x), ..., L_max_degree(x)]` in one recurrence pass.
pub fn eval_flf_column(params: &FracParams, max_degree: usize, x: f64) -> Result<Vec<f64>> {
    params.validate()?;
    non_negative("eval_flf_column", x)?;
    Ok(laguerre::laguerre_column_unchecked(params.theta, max_degree, params.y(x)))
}

/// Largest degree accepted by the explicit binomial sums.
pub const EXPLICIT_DEGREE_LIMIT: usize = 12;

/// `C(m + theta, m - r)` for real `theta`.
pub(crate) fn binomial(m: usize, theta: f64, r: usize) -> f64 {
    let k = m - r;
    (1..=k).fold(1.0, |acc, j| acc * (theta + (r + j) as f64) / j as f64)
}

/// Terms `(-1)^r (beta + 1)^r / r! C(m + theta, m - r)` of the explicit sum.
pub(crate) fn explicit_coefficients(params: &FracParams, m: usize) -> Result<Vec<f64>> {
    if m > EXPLICIT_DEGREE_LIMIT {
        return Err(Error::DegreeTooLarge { degree: m, limit: EXPLICIT_DEGREE_LIMIT });
    }
    let b = params.beta + 1.0;
    let mut scale = 1.0;
    Ok((0..=m)
        .map(|r| {
            if r > 0 {
                scale *= -b / r as f64;
            }
            scale * binomial(m, params.theta, r)
        })
        .collect())
}

/// Binomial-sum evaluation `sum_r (-1)^r (beta+1)^r / r! C(m+theta, m-r) x^(r gamma)`.
///
/// Cancels catastrophically for larger degrees, hence the degree cap; kept as
/// an independent check on the recurrence.
pub fn eval_flf_explicit(params: &FracParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    non_negative("eval_flf_explicit", x)?;
    let coeffs = explicit_coefficients(params, m)?;
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(r, c)| c * x.powf(r as f64 * params.gamma))
        .sum())
}

/// `ln rho(x)` with `rho = (beta+1)^(theta+1) gamma x^(gamma(theta+1)-1) e^{-(beta+1) x^gamma}`.
pub fn log_frac_weight(params: &FracParams, x: f64) -> Result<f64> {
    params.validate()?;
    positive("frac_weight", x)?;
    let (t, b, g) = (params.theta, params.beta + 1.0, params.gamma);
    Ok((t + 1.0) * b.ln() + g.ln() + (g * (t + 1.0) - 1.0) * x.ln() - params.y(x))
}

/// The fractional weight `rho^(theta,beta,gamma)(x)`.
pub fn frac_weight(params: &FracParams, x: f64) -> Result<f64> {
    log_frac_weight(params, x).map(f64::exp)
}

/// Mapped Gauss rule: classical nodes pulled back by the inverse map, classical weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FracQuadrature {
    pub params: FracParams,
    pub order: usize,
    pub x_nodes: Vec<f64>,
    pub y_nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub log_weights: Vec<f64>,
}

impl FracQuadrature {
    pub fn len(&self) -> usize {
        self.x_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_nodes.is_empty()
    }

    /// `w_i * v` with log-domain fallback for underflowed weights.
    pub fn weighted(&self, i: usize, v: f64) -> f64 {
        weighted_value(self.weights[i], self.log_weights[i], v)
    }

    /// `sum_i w_i f(x_i)`, approximating `int_0^inf f rho dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.x_nodes.iter().enumerate().map(|(i, &x)| self.weighted(i, f(x))).sum()
    }
}

/// Mapped Gauss rule of the given order (`order + 1` nodes), exact on
/// `span{1, x^gamma, ..., x^((2 order + 1) gamma)}` against `rho`.
pub fn frac_quadrature(params: &FracParams, order: usize) -> Result<FracQuadrature> {
    params.validate()?;
    let rule = laguerre::gauss_rule(params.theta, order)?;
    let x_nodes = rule.nodes.iter().map(|&y| params.x(y)).collect();
    Ok(FracQuadrature {
        params: *params,
        order,
        x_nodes,
        y_nodes: rule.nodes,
        weights: rule.weights,
        log_weights: rule.log_weights,
    })
}

/// `D u(x) = x^(1-gamma) / ((beta+1) gamma) * u'(x)` given the ordinary derivative `u'`.
pub fn apply_mapped_derivative(params: &FracParams, derivative: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    params.validate()?;
    positive("apply_mapped_derivative", x)?;
    Ok(params.derivative_factor(x) * derivative(x))
}

/// Analytic `D L_m^(theta,beta,gamma) = -L_{m-1}^(theta+1,beta,gamma)`.
pub fn flf_mapped_derivative(params: &FracParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    non_negative("flf_mapped_derivative", x)?;
    Ok(laguerre::derivative_unchecked(params.theta, m, params.y(x)))
}

/// Analytic ordinary derivative `d/dx L_m^(theta,beta,gamma)(x)`.
pub fn flf_ordinary_derivative(params: &FracParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    positive("flf_ordinary_derivative", x)?;
    Ok(laguerre::derivative_unchecked(params.theta, m, params.y(x)) / params.derivative_factor(x))
}

/// Coefficients of `D v` for `v = sum_m c_m L_m` in the same basis:
/// `d_r = -sum_{m > r} c_m`, `r = 0..N-1`.
pub fn derivative_coefficient_shift(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len().saturating_sub(1);
    let mut out = vec![0.0; n];
    let mut acc = 0.0;
    for r in (0..n).rev() {
        acc -= coeffs[r + 1];
        out[r] = acc;
    }
    out
}

/// `|rho^{-1} d/dx((beta+1)^theta x^(gamma theta + 1) e^{-Y} d/dx L_m) + m gamma L_m|`,
/// with both `x`-derivatives taken from the degree-lowering identity.
pub fn sturm_liouville_residual(params: &FracParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    positive("sturm_liouville_residual", x)?;
    let (t, b, g) = (params.theta, params.beta + 1.0, params.gamma);
    let y = params.y(x);
    let l = laguerre::laguerre_unchecked(t, m, y);
    // dy/dx and d2y/dx2
    let dy = b * g * x.powf(g - 1.0);
    let d2y = dy * (g - 1.0) / x;
    let dl = laguerre::derivative_unchecked(t, m, y);
    let d2l = if m >= 2 { laguerre::laguerre_unchecked(t + 2.0, m - 2, y) } else { 0.0 };
    let ux = dl * dy;
    let uxx = d2l * dy * dy + dl * d2y;
    // rho^{-1} p = x^(2-gamma) / ((beta+1) gamma); p'/p = (gamma theta + 1)/x - dy/dx
    let p_over_rho = x.powf(2.0 - g) / (b * g);
    let log_dp = (g * t + 1.0) / x - dy;
    Ok((p_over_rho * (log_dp * ux + uxx) + m as f64 * g * l).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::gamma;

    fn p(theta: f64, beta: f64, gamma: f64) -> FracParams {
        FracParams::new(theta, beta, gamma).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn parameter_validation() {
        assert!(FracParams::new(-1.0, 0.0, 0.5).is_err());
        assert!(FracParams::new(0.0, -1.0, 0.5).is_err());
        assert!(FracParams::new(0.0, 0.0, 0.0).is_err());
        assert!(FracParams::new(0.0, 0.0, 1.5).is_err());
        assert!(p(0.0, 0.0, 1.0).classical_limit());
        assert!(!p(0.0, 0.0, 0.5).classical_limit());
    }

    #[test]
    fn map_examples() {
        assert_eq!(map_forward(&p(0.0, 0.0, 0.5), 1.0).unwrap(), 1.0);
        assert!(rel(map_forward(&p(0.0, 20.0, 1.0 / 3.0), 8.0).unwrap(), 42.0) < 1e-15);
        assert_eq!(map_inverse(&p(0.0, 0.0, 0.5), 4.0).unwrap(), 16.0);
        assert_eq!(map_inverse(&p(0.0, 1.0, 0.5), 1.0).unwrap(), 0.25);
        assert!(rel(map_inverse(&p(0.0, 20.0, 1.0 / 3.0), 42.0).unwrap(), 8.0) < 1e-14);
        assert!(map_forward(&p(0.0, 0.0, 0.5), 0.0).is_err());
        assert!(map_inverse(&p(0.0, 0.0, 0.5), -1.0).is_err());
    }

    #[test]
    fn eval_examples() {
        let q = p(0.3, 4.0, 0.4);
        assert_eq!(eval_flf(&q, 0, 2.5).unwrap(), 1.0);
        assert_eq!(eval_flf(&p(0.0, 1.0, 0.5), 1, 4.0).unwrap(), -3.0);
        assert_eq!(eval_flf(&p(0.0, 0.0, 1.0), 2, 1.0).unwrap(), -0.5);
        assert_eq!(eval_flf(&q, 3, 0.0).unwrap(), laguerre::eval_laguerre(0.3, 3, 0.0).unwrap());
        assert!(eval_flf(&q, 3, -1.0).is_err());
    }

    #[test]
    fn explicit_examples() {
        let q = p(0.7, 3.0, 0.25);
        assert_eq!(eval_flf_explicit(&q, 0, 5.0).unwrap(), 1.0);
        assert_eq!(eval_flf_explicit(&p(0.0, 1.0, 0.5), 1, 4.0).unwrap(), -3.0);
        assert_eq!(eval_flf_explicit(&p(1.0, 0.0, 1.0), 2, 0.0).unwrap(), 3.0);
        assert!(matches!(eval_flf_explicit(&q, 13, 1.0), Err(Error::DegreeTooLarge { .. })));
        for m in 0..=12 {
            for &x in &[0.01, 0.5, 2.0] {
                let a = eval_flf(&q, m, x).unwrap();
                let b = eval_flf_explicit(&q, m, x).unwrap();
                assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "m {m} x {x}");
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert!(rel(frac_weight(&p(0.0, 0.0, 1.0), 2.0).unwrap(), (-2.0f64).exp()) < 1e-15);
        assert!(rel(frac_weight(&p(0.0, 1.0, 0.5), 1.0).unwrap(), (-2.0f64).exp()) < 1e-15);
        assert!(frac_weight(&p(0.0, 1.0, 0.5), 0.0).is_err());
        // far tail: the weight underflows but its logarithm does not
        let q = p(2.0, 24.0, 0.5);
        assert_eq!(frac_weight(&q, 1e4).unwrap(), 0.0);
        assert!(log_frac_weight(&q, 1e4).unwrap().is_finite());
    }

    #[test]
    fn quadrature_examples() {
        let classical = laguerre::gauss_rule(0.0, 7).unwrap();
        let fq = frac_quadrature(&p(0.0, 0.0, 1.0), 7).unwrap();
        assert_eq!(fq.x_nodes, classical.nodes);
        assert_eq!(fq.weights, classical.weights);

        for &beta in &[0.0, 5.0, 20.0] {
            let q = p(0.0, beta, 1.0 / 3.0);
            let fq = frac_quadrature(&q, 10).unwrap();
            let first = fq.integrate(|x| x.powf(q.gamma));
            assert!(rel(first, 1.0 / (beta + 1.0)) < 1e-13);
            for k in 0..=21 {
                let s = fq.integrate(|x| x.powf(k as f64 * q.gamma));
                let exact = gamma(k as f64 + 1.0) / (beta + 1.0).powi(k);
                assert!(rel(s, exact) < 1e-11, "beta {beta} k {k}");
            }
        }
    }

    #[test]
    fn mapped_derivative_examples() {
        let q = p(0.5, 3.0, 0.4);
        assert_eq!(apply_mapped_derivative(&q, |_| 0.0, 1.7).unwrap(), 0.0);
        let d = apply_mapped_derivative(&q, |x| q.gamma * x.powf(q.gamma - 1.0), 1.7).unwrap();
        assert!(rel(d, 1.0 / (q.beta + 1.0)) < 1e-14);
        let d1 = apply_mapped_derivative(&q, |x| flf_ordinary_derivative(&q, 1, x).unwrap(), 1.7).unwrap();
        assert!((d1 + 1.0).abs() < 1e-14);
        assert!(apply_mapped_derivative(&q, |_| 1.0, 0.0).is_err());
    }

    #[test]
    fn coefficient_shift_examples() {
        assert_eq!(derivative_coefficient_shift(&[2.5, 0.0, 0.0, 0.0]), vec![0.0, 0.0, 0.0]);
        assert_eq!(derivative_coefficient_shift(&[0.0, 1.0]), vec![-1.0]);
        assert_eq!(derivative_coefficient_shift(&[0.0, 0.0, 1.0]), vec![-1.0, -1.0]);
        assert!(derivative_coefficient_shift(&[4.0]).is_empty());
        assert!(derivative_coefficient_shift(&[]).is_empty());
    }

    // Independent oracle: the Sturm-Liouville operator applied with nested
    // central differences of the flux p(x) u'(x).
    fn sl_residual_fd(q: &FracParams, m: usize, x: f64) -> f64 {
        let u = |s: f64| eval_flf(q, m, s).unwrap();
        let flux = |s: f64| {
            let h = 1e-5 * s;
            let du = (u(s + h) - u(s - h)) / (2.0 * h);
            (q.beta + 1.0).powf(q.theta) * s.powf(q.gamma * q.theta + 1.0) * (-q.y(s)).exp() * du
        };
        let h = 1e-4 * x;
        let dflux = (flux(x + h) - flux(x - h)) / (2.0 * h);
        (dflux / frac_weight(q, x).unwrap() + m as f64 * q.gamma * u(x)).abs()
    }

    #[test]
    fn sturm_liouville_examples() {
        let q = p(0.4, 2.0, 0.6);
        assert_eq!(sturm_liouville_residual(&q, 0, 3.3).unwrap(), 0.0);
        assert!(sturm_liouville_residual(&p(0.0, 0.0, 1.0), 3, 2.0).unwrap() <= 1e-8);
        let q = p(1.0, 5.0, 1.0 / 3.0);
        let l4 = eval_flf(&q, 4, 1.5).unwrap();
        assert!(sturm_liouville_residual(&q, 4, 1.5).unwrap() <= 1e-7 * (1.0 + l4.abs()));
        assert!(sl_residual_fd(&q, 4, 1.5) <= 1e-5 * (1.0 + l4.abs()));
    }
}
