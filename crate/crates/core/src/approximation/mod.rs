//! Weighted projection and interpolation for both families, mapped-derivative
//! Sobolev seminorms and the associated error-bound evaluators.
//!
//! "Projection" here is the pseudo-projection whose coefficients are computed
//! with a `Q`-point Gauss rule rather than exact integrals; for `Q >= 2M` it is
//! exact on the approximation space and the aliasing error beyond it is
//! measured by doubling `Q`.

mod bounds;
mod seminorms;

pub use bounds::*;
pub use seminorms::*;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fractional::{self, FracParams};
use crate::generalized::{self, GenParams};
use crate::laguerre::{self, weighted_value};

/// Basis family of an expansion together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Fractional(FracParams),
    Generalized(GenParams),
}

impl Family {
    pub fn theta(&self) -> f64 {
        match self {
            Family::Fractional(p) => p.theta,
            Family::Generalized(p) => p.theta,
        }
    }

    pub fn frac(&self) -> FracParams {
        match self {
            Family::Fractional(p) => *p,
            Family::Generalized(p) => p.frac(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Family::Fractional(p) => p.validate(),
            Family::Generalized(p) => p.validate(),
        }
    }

    /// The family whose weight carries the `k`-th seminorm.
    pub fn shifted(&self, k: usize) -> Family {
        match self {
            Family::Fractional(p) => Family::Fractional(p.shifted(k)),
            Family::Generalized(p) => Family::Generalized(p.shifted(k)),
        }
    }

    /// Basis values `[phi_0(x), ..., phi_max_degree(x)]`.
    pub fn basis_column(&self, max_degree: usize, x: f64) -> Vec<f64> {
        let f = self.frac();
        let col = laguerre::laguerre_column_unchecked(f.theta, max_degree, f.y(x));
        match self {
            Family::Fractional(_) => col,
            Family::Generalized(g) => col.into_iter().map(|v| g.times_prefactor(x, v)).collect(),
        }
    }

    /// The `points`-point Gauss rule of this family's weight: classical
    /// weights for the fractional family, `lambda` weights for the generalized one.
    pub fn rule(&self, points: usize) -> Result<NodalRule> {
        if points == 0 {
            return Err(invalid("a quadrature rule needs at least one point"));
        }
        match self {
            Family::Fractional(p) => {
                let q = fractional::frac_quadrature(p, points - 1)?;
                Ok(NodalRule { x: q.x_nodes, weights: q.weights, log_weights: q.log_weights })
            }
            Family::Generalized(p) => {
                let q = generalized::gen_quadrature(p, points - 1)?;
                Ok(NodalRule { x: q.x_nodes, weights: q.lambda_weights, log_weights: q.log_lambda_weights })
            }
        }
    }
}

/// Nodes and (log-)weights of a weighted Gauss rule in the physical variable.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalRule {
    pub x: Vec<f64>,
    pub weights: Vec<f64>,
    pub log_weights: Vec<f64>,
}

impl NodalRule {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn weighted(&self, i: usize, v: f64) -> f64 {
        weighted_value(self.weights[i], self.log_weights[i], v)
    }

    /// `sqrt(sum_i w_i v_i^2)`.
    pub fn norm(&self, values: &[f64]) -> f64 {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| self.weighted(i, v * v))
            .sum::<f64>()
            .sqrt()
    }

    /// Function values at the nodes; a non-finite value is an error naming the node.
    pub fn sample(&self, u: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
        self.x
            .iter()
            .map(|&x| {
                let v = u(x);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Evaluation { x, value: v })
                }
            })
            .collect()
    }
}

/// Modal coefficients against a basis family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub family: Family,
    pub coeffs: Vec<f64>,
}

impl Expansion {
    /// Highest basis index (`coeffs.len() - 1`).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `sum_m c_m phi_m(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        self.family
            .basis_column(self.degree(), x)
            .iter()
            .zip(&self.coeffs)
            .map(|(b, c)| b * c)
            .sum()
    }

    /// Expansion of the mapped derivative (scaled mapped derivative for the
    /// generalized family) in the same basis, one degree lower.
    pub fn mapped_derivative(&self) -> Expansion {
        Expansion { family: self.family, coeffs: fractional::derivative_coefficient_shift(&self.coeffs) }
    }

    /// Squared-norm weights `h_m` make `||v||^2 = sum_m h_m c_m^2`.
    pub fn weighted_norm(&self) -> f64 {
        let theta = self.family.theta();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| laguerre::norm_unchecked(theta, m) * c * c)
            .sum::<f64>()
            .sqrt()
    }
}

/// `c_m = h_m^{-1} sum_i w_i u(x_i) phi_m(x_i)`, `m <= max_degree`.
fn discrete_transform(family: &Family, rule: &NodalRule, values: &[f64], max_degree: usize) -> Expansion {
    let theta = family.theta();
    let mut coeffs = vec![0.0; max_degree + 1];
    for (i, (&x, &v)) in rule.x.iter().zip(values).enumerate() {
        let wv = rule.weighted(i, v);
        if wv == 0.0 {
            continue;
        }
        for (c, b) in coeffs.iter_mut().zip(family.basis_column(max_degree, x)) {
            *c += wv * b;
        }
    }
    for (m, c) in coeffs.iter_mut().enumerate() {
        *c /= laguerre::norm_unchecked(theta, m);
    }
    Expansion { family: *family, coeffs }
}

/// Default coefficient quadrature size `4M + 64`.
pub fn default_oversample(max_degree: usize) -> usize {
    4 * max_degree + 64
}

fn check_oversample(max_degree: usize, points: usize) -> Result<()> {
    if points < (2 * max_degree).max(max_degree + 1) {
        return Err(invalid(format!(
            "projection of degree {max_degree} needs at least {} quadrature points, got {points}",
            (2 * max_degree).max(max_degree + 1)
        )));
    }
    Ok(())
}

/// Projection of `u` onto the span of the family's first `max_degree + 1`
/// basis functions, with coefficients from a `points`-point rule.
pub fn project_family(u: impl Fn(f64) -> f64, max_degree: usize, family: &Family, points: usize) -> Result<Expansion> {
    family.validate()?;
    check_oversample(max_degree, points)?;
    let rule = family.rule(points)?;
    let values = rule.sample(u)?;
    Ok(discrete_transform(family, &rule, &values, max_degree))
}

/// Weighted orthogonal projection onto `span{1, x^gamma, ..., x^(M gamma)}`.
pub fn project(u: impl Fn(f64) -> f64, max_degree: usize, params: &FracParams, points: usize) -> Result<Expansion> {
    project_family(u, max_degree, &Family::Fractional(*params), points)
}

/// Weighted orthogonal projection onto `x^eta span{1, ..., x^(M gamma)}`.
pub fn gen_project(u: impl Fn(f64) -> f64, max_degree: usize, params: &GenParams, points: usize) -> Result<Expansion> {
    project_family(u, max_degree, &Family::Generalized(*params), points)
}

/// Interpolant of `u` at the `M + 1` mapped Gauss nodes, stored modally.
///
/// The discrete transform with the `M`-order rule reproduces nodal values
/// because that rule integrates products of degree `<= 2M + 1` exactly.
pub fn interpolate(u: impl Fn(f64) -> f64, max_degree: usize, params: &FracParams) -> Result<Expansion> {
    let family = Family::Fractional(*params);
    family.validate()?;
    let rule = family.rule(max_degree + 1)?;
    let values = rule.sample(u)?;
    let mut e = discrete_transform(&family, &rule, &values, max_degree);
    // The analysis is only an approximate inverse of nodal synthesis in floating
    // point: at the outermost nodes the basis grows like y^M while the weights
    // decay like e^{-y}, so coefficient rounding is amplified on synthesis.
    // A few refinement sweeps on the nodal residual remove that.
    for _ in 0..REFINEMENT_SWEEPS {
        let residual: Vec<f64> = rule.x.iter().zip(&values).map(|(&x, v)| v - e.evaluate(x)).collect();
        if residual.iter().all(|r| *r == 0.0) {
            break;
        }
        let correction = discrete_transform(&family, &rule, &residual, max_degree);
        for (c, d) in e.coeffs.iter_mut().zip(&correction.coeffs) {
            *c += d;
        }
    }
    Ok(e)
}

const REFINEMENT_SWEEPS: usize = 3;

/// Generalized interpolant `x^eta I(x^{-eta} u)`.
pub fn gen_interpolate(u: impl Fn(f64) -> f64, max_degree: usize, params: &GenParams) -> Result<Expansion> {
    params.validate()?;
    let inner = interpolate(|x| u(x) / params.prefactor(x), max_degree, &params.frac())?;
    Ok(Expansion { family: Family::Generalized(*params), coeffs: inner.coeffs })
}

/// Interpolant for either family.
pub fn interpolate_family(u: impl Fn(f64) -> f64, max_degree: usize, family: &Family) -> Result<Expansion> {
    match family {
        Family::Fractional(p) => interpolate(u, max_degree, p),
        Family::Generalized(p) => gen_interpolate(u, max_degree, p),
    }
}

/// `sqrt(sum_i w_i (u(x_i) - v(x_i))^2)` on the `points`-point rule of the
/// expansion's weight; requires `points >= 4M + 64`.
pub fn weighted_l2_error(u: impl Fn(f64) -> f64, approx: &Expansion, points: usize) -> Result<f64> {
    let m = approx.degree();
    if points < default_oversample(m) {
        return Err(invalid(format!(
            "error quadrature for degree {m} needs at least {} points, got {points}",
            default_oversample(m)
        )));
    }
    let rule = approx.family.rule(points)?;
    let values = rule.sample(u)?;
    let diff: Vec<f64> = rule.x.iter().zip(&values).map(|(&x, v)| v - approx.evaluate(x)).collect();
    Ok(rule.norm(&diff))
}

/// `(u - v, phi_m)` for `m <= degree(v)` on a `points`-point rule.
pub fn residual_moments(u: impl Fn(f64) -> f64, approx: &Expansion, points: usize) -> Result<Vec<f64>> {
    let rule = approx.family.rule(points)?;
    let values = rule.sample(u)?;
    let m = approx.degree();
    let mut out = vec![0.0; m + 1];
    for (i, (&x, v)) in rule.x.iter().zip(&values).enumerate() {
        let r = rule.weighted(i, v - approx.evaluate(x));
        for (o, b) in out.iter_mut().zip(approx.family.basis_column(m, x)) {
            *o += r * b;
        }
    }
    Ok(out)
}

/// `sum_i w_i u(x_i)` with the `M`-order rule of the family minus the exact
/// integral supplied by the caller, i.e. the quadrature error of that rule.
pub fn quadrature_error(u: impl Fn(f64) -> f64, max_degree: usize, family: &Family, exact: f64) -> Result<f64> {
    let rule = family.rule(max_degree + 1)?;
    let values = rule.sample(u)?;
    let s: f64 = values.iter().enumerate().map(|(i, v)| rule.weighted(i, *v)).sum();
    Ok(s - exact)
}
