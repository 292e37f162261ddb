use serde::{Deserialize, Serialize};

use super::Family;
use crate::error::{invalid, Error, Result};
use crate::fractional::FracParams;
use crate::generalized::GenParams;

/// Mapped-derivative seminorms `|v|_r = ||D^r v||` against the weight of
/// parameter `theta + r`, for `r = 0..=mu`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SobolevReport {
    pub mu: usize,
    pub seminorms: Vec<f64>,
    pub norm: f64,
}

impl SobolevReport {
    fn from_seminorms(seminorms: Vec<f64>) -> Self {
        let norm = seminorms.iter().map(|s| s * s).sum::<f64>().sqrt();
        SobolevReport { mu: seminorms.len() - 1, seminorms, norm }
    }

    /// The highest seminorm `|v|_mu`.
    pub fn top(&self) -> f64 {
        self.seminorms[self.mu]
    }
}

/// `||D^order v||` against the weight of the family shifted by `weight_shift`,
/// on a `points`-point rule of that weight.
///
/// `derivatives(x)` returns `[v, Dv, ..., D^n v]` (`n >= order`) in the
/// family's own derivative: the mapped derivative for the fractional family,
/// the scaled one `x^eta D x^{-eta}` for the generalized family.
pub fn derivative_norm(
    family: &Family,
    order: usize,
    weight_shift: usize,
    points: usize,
    derivatives: impl Fn(f64) -> Option<Vec<f64>>,
) -> Result<f64> {
    family.validate()?;
    let rule = family.shifted(weight_shift).rule(points)?;
    let mut values = Vec::with_capacity(rule.len());
    for &x in &rule.x {
        let d = derivatives(x)
            .and_then(|d| d.get(order).copied())
            .filter(|v| v.is_finite())
            .ok_or(Error::DerivativeOracle { x, order })?;
        values.push(d);
    }
    Ok(rule.norm(&values))
}

/// Seminorms `r = 0..=mu` of `v`; the `r`-th uses the `points`-point rule of
/// parameter `theta + r` (and `sigma + r` for the generalized family).
pub fn sobolev_seminorms(
    family: &Family,
    mu: usize,
    points: usize,
    derivatives: impl Fn(f64) -> Option<Vec<f64>>,
) -> Result<SobolevReport> {
    let seminorms = (0..=mu)
        .map(|r| derivative_norm(family, r, r, points, &derivatives))
        .collect::<Result<Vec<_>>>()?;
    Ok(SobolevReport::from_seminorms(seminorms))
}

/// [`sobolev_seminorms`] for the generalized family.
pub fn gen_sobolev_seminorms(
    params: &GenParams,
    mu: usize,
    points: usize,
    derivatives: impl Fn(f64) -> Option<Vec<f64>>,
) -> Result<SobolevReport> {
    sobolev_seminorms(&Family::Generalized(*params), mu, points, derivatives)
}

/// Mapped derivatives `[v, Dv, ..., D^n v]` from ordinary ones `[v, v', ..., v^(n)]`.
///
/// Uses `D^r v = c^r sum_j p_{r,j} x^(j - r gamma) v^(j)` with
/// `c = 1/((beta+1) gamma)` and `p_{r+1,j} = (j - r gamma) p_{r,j} + p_{r,j-1}`.
pub fn mapped_from_ordinary(params: &FracParams, x: f64, ordinary: &[f64]) -> Vec<f64> {
    let n = ordinary.len();
    if n == 0 {
        return Vec::new();
    }
    let g = params.gamma;
    let c = 1.0 / ((params.beta + 1.0) * g);
    let mut p = vec![0.0; n];
    p[0] = 1.0;
    let mut out = vec![ordinary[0]];
    for r in 0..n - 1 {
        let mut next = vec![0.0; n];
        for j in 0..=r + 1 {
            let keep = if j <= r { (j as f64 - r as f64 * g) * p[j] } else { 0.0 };
            let raise = if j >= 1 { p[j - 1] } else { 0.0 };
            next[j] = keep + raise;
        }
        p = next;
        let r1 = r + 1;
        let s: f64 = (1..=r1).map(|j| p[j] * x.powf(j as f64 - r1 as f64 * g) * ordinary[j]).sum();
        out.push(c.powi(r1 as i32) * s);
    }
    out
}

/// Scaled derivatives `x^eta D^r (x^{-eta} v)` from ordinary derivatives of `v`,
/// via Leibniz on `x^{-eta} v`.
pub fn scaled_from_ordinary(params: &GenParams, x: f64, ordinary: &[f64]) -> Vec<f64> {
    let n = ordinary.len();
    let eta = params.eta();
    // (x^{-eta})^(k) = (-eta)(-eta-1)...(-eta-k+1) x^{-eta-k}
    let mut pw = Vec::with_capacity(n);
    let mut falling = 1.0;
    for k in 0..n {
        pw.push(falling * x.powf(-eta - k as f64));
        falling *= -eta - k as f64;
    }
    let z: Vec<f64> = (0..n)
        .map(|j| {
            let mut binom = 1.0;
            let mut s = 0.0;
            for k in 0..=j {
                s += binom * pw[j - k] * ordinary[k];
                binom = binom * (j - k) as f64 / (k + 1) as f64;
            }
            s
        })
        .collect();
    let pre = x.powf(eta);
    mapped_from_ordinary(&params.frac(), x, &z).into_iter().map(|v| v * pre).collect()
}

impl Family {
    /// Family derivatives from ordinary derivatives at `x`.
    pub fn derivatives_from_ordinary(&self, x: f64, ordinary: &[f64]) -> Vec<f64> {
        match self {
            Family::Fractional(p) => mapped_from_ordinary(p, x, ordinary),
            Family::Generalized(p) => scaled_from_ordinary(p, x, ordinary),
        }
    }
}

/// Ordinary derivatives `[u, u', ..., u^(order)]` by central differences with
/// one Richardson step (fourth order). The base step is `1e-4 max(1, x)`,
/// shrunk so the widest stencil stays inside `(0, inf)`.
pub fn fd_ordinary_derivatives(u: impl Fn(f64) -> f64, x: f64, order: usize) -> Result<Vec<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid(format!("finite differences need x > 0, got {x}")));
    }
    let mut out = vec![u(x)];
    for n in 1..=order {
        let reach = n as f64 / 2.0;
        let h = (1e-4 * x.max(1.0)).min(0.1 * x / reach);
        let d1 = central(&u, x, n, h);
        let d2 = central(&u, x, n, h / 2.0);
        out.push((4.0 * d2 - d1) / 3.0);
    }
    if let Some(pos) = out.iter().position(|v| !v.is_finite()) {
        return Err(Error::DerivativeOracle { x, order: pos });
    }
    Ok(out)
}

fn central(u: &impl Fn(f64) -> f64, x: f64, n: usize, h: f64) -> f64 {
    let mut binom = 1.0;
    let mut s = 0.0;
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * binom * u(x + (n as f64 / 2.0 - k as f64) * h);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    s / h.powi(n as i32)
}
