//! Generalized fractional Laguerre functions
//! `x^eta L_m^(theta,beta,gamma)(x)` with `eta = gamma (theta - sigma) / 2`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fractional::{self, FracParams};
use crate::laguerre::{self, weighted_value};

/// Parameter quadruple of the generalized family. `sigma` is unrestricted;
/// the remaining parameters obey the [`FracParams`] constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub theta: f64,
    pub sigma: f64,
    pub gamma: f64,
    pub beta: f64,
}

impl GenParams {
    pub fn new(theta: f64, sigma: f64, gamma: f64, beta: f64) -> Result<Self> {
        let p = GenParams { theta, sigma, gamma, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sigma.is_finite() {
            return Err(invalid(format!("sigma must be finite, got {}", self.sigma)));
        }
        self.frac().validate()
    }

    /// `gamma (theta - sigma) / 2`, always recomputed from the parameters.
    pub fn eta(&self) -> f64 {
        self.gamma * (self.theta - self.sigma) / 2.0
    }

    /// The underlying fractional parameters `(theta, beta, gamma)`.
    pub fn frac(&self) -> FracParams {
        FracParams { theta: self.theta, beta: self.beta, gamma: self.gamma }
    }

    /// `(theta + k, sigma + k)`: same `eta`, weight of the `k`-th seminorm.
    pub fn shifted(&self, k: usize) -> Self {
        GenParams { theta: self.theta + k as f64, sigma: self.sigma + k as f64, ..*self }
    }

    pub fn classical_limit(&self) -> bool {
        self.gamma == 1.0
    }

    /// `x^eta`, through logarithms very close to the origin.
    pub fn prefactor(&self, x: f64) -> f64 {
        if x < 1e-12 {
            (self.eta() * x.ln()).exp()
        } else {
            x.powf(self.eta())
        }
    }

    /// `x^eta v`, combining logarithms close to the origin where `x^eta`
    /// alone may overflow while the product does not.
    pub(crate) fn times_prefactor(&self, x: f64, v: f64) -> f64 {
        if x < 1e-12 && v != 0.0 {
            v.signum() * (self.eta() * x.ln() + v.abs().ln()).exp()
        } else {
            x.powf(self.eta()) * v
        }
    }
}

fn positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, x })
    }
}

/// `L_m^(theta,sigma,gamma,beta)(x) = x^eta L_m^(theta,beta,gamma)(x)`.
pub fn eval_gflf(params: &GenParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    positive("eval_gflf", x)?;
    let f = params.frac();
    Ok(params.times_prefactor(x, laguerre::laguerre_unchecked(f.theta, m, f.y(x))))
}

/// `[L_0(x), ..., L_max_degree(x)]` of the generalized family.
pub fn eval_gflf_column(params: &GenParams, max_degree: usize, x: f64) -> Result<Vec<f64>> {
    params.validate()?;
    positive("eval_gflf_column", x)?;
    let f = params.frac();
    Ok(laguerre::laguerre_column_unchecked(f.theta, max_degree, f.y(x))
        .into_iter()
        .map(|v| params.times_prefactor(x, v))
        .collect())
}

/// Binomial-sum form with exponents `eta + r gamma` (degree capped like
/// [`fractional::eval_flf_explicit`]).
pub fn eval_gflf_explicit(params: &GenParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    positive("eval_gflf_explicit", x)?;
    let coeffs = fractional::explicit_coefficients(&params.frac(), m)?;
    let eta = params.eta();
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(r, c)| c * x.powf(eta + r as f64 * params.gamma))
        .sum())
}

/// `ln rho^(theta,sigma,gamma,beta)(x)`,
/// `rho = gamma (beta+1)^(theta+1) x^(gamma(sigma+1)-1) e^{-(beta+1) x^gamma}`.
pub fn log_gen_weight(params: &GenParams, x: f64) -> Result<f64> {
    params.validate()?;
    positive("gen_weight", x)?;
    let (t, s, g, b) = (params.theta, params.sigma, params.gamma, params.beta + 1.0);
    Ok(g.ln() + (t + 1.0) * b.ln() + (g * (s + 1.0) - 1.0) * x.ln() - params.frac().y(x))
}

pub fn gen_weight(params: &GenParams, x: f64) -> Result<f64> {
    log_gen_weight(params, x).map(f64::exp)
}

/// Analytic `d/dx` of the generalized basis:
/// `eta x^{-1} L_m^(theta,sigma) - gamma (beta+1) x^(gamma-1) L_{m-1}^(theta+1,sigma+1)`
/// (only the prefactor term for `m = 0`).
pub fn gen_ordinary_derivative(params: &GenParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    positive("gen_ordinary_derivative", x)?;
    let f = params.frac();
    let y = f.y(x);
    let l = laguerre::laguerre_unchecked(f.theta, m, y);
    let lowered = if m == 0 { 0.0 } else { laguerre::laguerre_unchecked(f.theta + 1.0, m - 1, y) };
    let inner = params.eta() / x * l - params.gamma * (params.beta + 1.0) * x.powf(params.gamma - 1.0) * lowered;
    Ok(params.times_prefactor(x, inner))
}

/// `x^eta D(x^{-eta} u)` from `u(x)` and its ordinary derivative `u'(x)`,
/// expanded by the product rule as `x^(1-gamma) / ((beta+1) gamma) (u' - eta u / x)`.
pub fn gen_scaled_derivative(params: &GenParams, u: f64, du: f64, x: f64) -> Result<f64> {
    params.validate()?;
    positive("gen_scaled_derivative", x)?;
    Ok(params.frac().derivative_factor(x) * (du - params.eta() * u / x))
}

/// [`gen_scaled_derivative`] for a function handle returning `(u, u')`.
pub fn gen_scaled_derivative_of(
    params: &GenParams,
    u_and_derivative: impl Fn(f64) -> (f64, f64),
    x: f64,
) -> Result<f64> {
    let (u, du) = u_and_derivative(x);
    gen_scaled_derivative(params, u, du, x)
}

/// Analytic scaled derivative of the basis: `-L_{m-1}^(theta+1,sigma+1)`.
pub fn gflf_scaled_derivative(params: &GenParams, m: usize, x: f64) -> Result<f64> {
    params.validate()?;
    positive("gflf_scaled_derivative", x)?;
    let f = params.frac();
    Ok(params.times_prefactor(x, laguerre::derivative_unchecked(f.theta, m, f.y(x))))
}

/// Generalized rule: fractional nodes with weights `lambda_i = x_i^(gamma(sigma-theta)) w_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenQuadrature {
    pub params: GenParams,
    pub order: usize,
    pub x_nodes: Vec<f64>,
    pub y_nodes: Vec<f64>,
    pub lambda_weights: Vec<f64>,
    pub log_lambda_weights: Vec<f64>,
    /// The classical weights `w_i` the `lambda_i` derive from.
    pub classical_weights: Vec<f64>,
    pub classical_log_weights: Vec<f64>,
}

impl GenQuadrature {
    pub fn len(&self) -> usize {
        self.x_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_nodes.is_empty()
    }

    /// `lambda_i * v` with log-domain fallback.
    pub fn weighted(&self, i: usize, v: f64) -> f64 {
        weighted_value(self.lambda_weights[i], self.log_lambda_weights[i], v)
    }

    /// `sum_i lambda_i f(x_i)`, approximating `int_0^inf f rho^(theta,sigma) dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.x_nodes.iter().enumerate().map(|(i, &x)| self.weighted(i, f(x))).sum()
    }

    /// The `y`-form `(beta+1)^(theta-sigma) y_i^(sigma-theta) w_i` of the weights.
    pub fn lambda_weights_y_form(&self) -> Vec<f64> {
        let d = self.params.sigma - self.params.theta;
        let b = self.params.beta + 1.0;
        self.y_nodes
            .iter()
            .zip(&self.classical_log_weights)
            .map(|(&y, &lw)| (lw - d * b.ln() + d * y.ln()).exp())
            .collect()
    }
}

/// Generalized rule of the given order, exact on
/// `{x^(gamma(theta-sigma)) q(x^gamma) : deg q <= 2 order + 1}`.
pub fn gen_quadrature(params: &GenParams, order: usize) -> Result<GenQuadrature> {
    params.validate()?;
    let fq = fractional::frac_quadrature(&params.frac(), order)?;
    let d = params.gamma * (params.sigma - params.theta);
    let log_lambda_weights: Vec<f64> = fq
        .x_nodes
        .iter()
        .zip(&fq.log_weights)
        .map(|(&x, &lw)| lw + d * x.ln())
        .collect();
    let lambda_weights = log_lambda_weights.iter().map(|l| l.exp()).collect();
    Ok(GenQuadrature {
        params: *params,
        order,
        x_nodes: fq.x_nodes,
        y_nodes: fq.y_nodes,
        lambda_weights,
        log_lambda_weights,
        classical_weights: fq.weights,
        classical_log_weights: fq.log_weights,
    })
}
