//! Generalized Laguerre polynomials `L_m^(theta)`: three-term recurrence,
//! norms, derivative identities and Laguerre-Gauss quadrature.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::special::gamma::{gamma, ln_gamma};
use crate::tridiag::symmetric_tridiagonal_eigen;

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > -1.0 {
        Ok(())
    } else {
        Err(invalid(format!("theta must be finite and > -1, got {theta}")))
    }
}

/// `L_m^(theta)(y)` by upward recurrence from `L_0 = 1`, `L_1 = -y + theta + 1`.
pub fn eval_laguerre(theta: f64, m: usize, y: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(laguerre_unchecked(theta, m, y))
}

pub(crate) fn laguerre_unchecked(theta: f64, m: usize, y: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = -y + theta + 1.0;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + theta + 1.0 - y) * cur - (kf + theta) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `[L_0(y), ..., L_max_degree(y)]` from a single recurrence pass.
pub fn eval_laguerre_column(theta: f64, max_degree: usize, y: f64) -> Result<Vec<f64>> {
    check_theta(theta)?;
    Ok(laguerre_column_unchecked(theta, max_degree, y))
}

pub(crate) fn laguerre_column_unchecked(theta: f64, max_degree: usize, y: f64) -> Vec<f64> {
    let mut col = Vec::with_capacity(max_degree + 1);
    col.push(1.0);
    if max_degree == 0 {
        return col;
    }
    col.push(-y + theta + 1.0);
    for k in 1..max_degree {
        let kf = k as f64;
        let next = ((2.0 * kf + theta + 1.0 - y) * col[k] - (kf + theta) * col[k - 1]) / (kf + 1.0);
        col.push(next);
    }
    col
}

/// Squared norm `h_m^(theta) = Gamma(m + theta + 1) / Gamma(m + 1)`.
pub fn laguerre_norm(theta: f64, m: usize) -> Result<f64> {
    check_theta(theta)?;
    Ok(norm_unchecked(theta, m))
}

pub(crate) fn norm_unchecked(theta: f64, m: usize) -> f64 {
    if theta == 0.0 {
        return 1.0;
    }
    let mf = m as f64;
    (ln_gamma(mf + theta + 1.0) - ln_gamma(mf + 1.0)).exp()
}

/// Laguerre-Gauss rule with `order + 1` nodes for the weight `y^theta e^{-y}`.
///
/// Weights are kept in the log domain as well: for large orders the weights
/// of the outermost nodes underflow `f64` and `weights[i]` becomes zero while
/// `log_weights[i]` stays exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub theta: f64,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub log_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(y_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, &y)| self.weighted(i, f(y)))
            .sum()
    }

    /// `w_i * v`, falling back to the log weight when `w_i` has underflowed.
    pub fn weighted(&self, i: usize, v: f64) -> f64 {
        weighted_value(self.weights[i], self.log_weights[i], v)
    }
}

pub(crate) fn weighted_value(w: f64, log_w: f64, v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else if w > 1e-250 {
        w * v
    } else {
        v.signum() * (log_w + v.abs().ln()).exp()
    }
}

/// Jacobi matrix of the monic Laguerre recurrence: diagonal `2m + theta + 1`,
/// off-diagonal `sqrt(m (m + theta))`.
fn jacobi_matrix(theta: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..n).map(|m| 2.0 * m as f64 + theta + 1.0).collect();
    let off = (1..n)
        .map(|m| {
            let mf = m as f64;
            (mf * (mf + theta)).sqrt()
        })
        .collect();
    (diag, off)
}

/// Plain Golub-Welsch: nodes are the Jacobi eigenvalues and weights are
/// `Gamma(theta + 1) z_i^2`, `z_i` the first eigenvector components.
pub fn golub_welsch(theta: f64, order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_theta(theta)?;
    let n = order + 1;
    let (diag, off) = jacobi_matrix(theta, n);
    let eig = symmetric_tridiagonal_eigen(&diag, &off)
        .ok_or(Error::ConvergenceFailure { order, theta })?;
    let mass = gamma(theta + 1.0);
    let weights = eig.first_components.iter().map(|z| mass * z * z).collect();
    Ok((eig.values, weights))
}

/// Weights from the closed form
/// `Gamma(M + theta + 1) / ((M + theta + 1) (M + 1)!) * y_i / L_M(y_i)^2`.
///
/// Only well conditioned for small orders; used to cross-check [`gauss_rule`].
pub fn explicit_weights(theta: f64, nodes: &[f64]) -> Result<Vec<f64>> {
    check_theta(theta)?;
    let order = nodes.len().saturating_sub(1);
    let mf = order as f64;
    let log_c = ln_gamma(mf + theta + 1.0) - (mf + theta + 1.0).ln() - ln_gamma(mf + 2.0);
    Ok(nodes
        .iter()
        .map(|&y| {
            let l = laguerre_unchecked(theta, order, y);
            (log_c + y.ln() - 2.0 * l.abs().ln()).exp()
        })
        .collect())
}

/// `(L_n(y), L_{n-1}(y))` multiplied by a common positive factor that keeps
/// the recurrence inside the floating-point range.
fn scaled_top_pair(theta: f64, n: usize, y: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = -y + theta + 1.0;
    if n == 1 {
        return (cur, prev);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + theta + 1.0 - y) * cur - (kf + theta) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            cur *= 1e-150;
            prev *= 1e-150;
        }
    }
    (cur, prev)
}

/// `ln(1 / sum_k p_k(y)^2)` with `p_k` the orthonormal Laguerre polynomials:
/// the Christoffel form of the Gauss weight at a node `y`.
fn log_christoffel_weight(theta: f64, n: usize, y: f64) -> f64 {
    let mut log_scale = 0.0;
    let mut prev = 0.0;
    let mut cur = 1.0 / gamma(theta + 1.0).sqrt();
    let mut sum = cur * cur;
    for k in 0..n.saturating_sub(1) {
        let kf = k as f64;
        let a = 2.0 * kf + theta + 1.0;
        let b = (kf * (kf + theta)).sqrt();
        let b_next = ((kf + 1.0) * (kf + 1.0 + theta)).sqrt();
        let next = ((y - a) * cur - b * prev) / b_next;
        prev = cur;
        cur = next;
        sum += cur * cur;
        if cur.abs() > 1e100 {
            cur *= 1e-100;
            prev *= 1e-100;
            sum *= 1e-200;
            log_scale += 100.0 * std::f64::consts::LN_10;
        }
    }
    -(sum.ln() + 2.0 * log_scale)
}

/// Laguerre-Gauss rule of the given order (`order + 1` nodes, exact for
/// polynomials of degree `<= 2 order + 1` against `y^theta e^{-y}`).
///
/// Nodes come from the Golub-Welsch eigenproblem and are polished by Newton
/// steps on `L_{order+1}`; weights use the Christoffel form in the log domain,
/// which keeps full relative accuracy even where they are tiny.
///
/// Rules of order `>= CACHE_MIN_ORDER` are memoized per process.
pub fn gauss_rule(theta: f64, order: usize) -> Result<QuadratureRule> {
    check_theta(theta)?;
    if order < CACHE_MIN_ORDER {
        return compute_gauss_rule(theta, order);
    }
    Ok(cached_gauss_rule(theta, order)?.as_ref().clone())
}

/// Orders below this are cheap enough to recompute.
pub const CACHE_MIN_ORDER: usize = 64;

type RuleCache = Mutex<HashMap<(u64, usize), Arc<QuadratureRule>>>;

fn cached_gauss_rule(theta: f64, order: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (theta.to_bits(), order);
    if let Some(rule) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(rule));
    }
    // Computed outside the lock; a concurrent duplicate is identical.
    let rule = Arc::new(compute_gauss_rule(theta, order)?);
    cache.lock().unwrap_or_else(|e| e.into_inner()).entry(key).or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

fn compute_gauss_rule(theta: f64, order: usize) -> Result<QuadratureRule> {
    let n = order + 1;
    let (diag, off) = jacobi_matrix(theta, n);
    let eig = symmetric_tridiagonal_eigen(&diag, &off)
        .ok_or(Error::ConvergenceFailure { order, theta })?;
    let mut nodes = eig.values;

    let nf = n as f64;
    for i in 0..n {
        let lo = if i > 0 { nodes[i] - nodes[i - 1] } else { nodes[i] };
        let hi = if i + 1 < n { nodes[i + 1] - nodes[i] } else { f64::INFINITY };
        let max_step = 0.1 * lo.min(hi);
        let mut y = nodes[i];
        for _ in 0..4 {
            let (ln, lnm1) = scaled_top_pair(theta, n, y);
            let dl = nf * ln - (nf + theta) * lnm1;
            if dl == 0.0 {
                break;
            }
            let step = y * ln / dl;
            if !step.is_finite() || step.abs() > max_step {
                break;
            }
            y -= step;
            if step.abs() <= 2.0 * f64::EPSILON * y.abs() {
                break;
            }
        }
        if y > 0.0 {
            nodes[i] = y;
        }
    }
    if nodes.iter().any(|&y| !(y > 0.0)) || nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ConvergenceFailure { order, theta });
    }

    let log_weights: Vec<f64> = nodes.iter().map(|&y| log_christoffel_weight(theta, n, y)).collect();
    let weights = log_weights.iter().map(|lw| lw.exp()).collect();
    Ok(QuadratureRule { theta, order, nodes, weights, log_weights })
}

/// Residuals of the classical derivative identities at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeIdentityReport {
    /// `max_m |L_m - (L_m' - L_{m+1}')|`
    pub connection: f64,
    /// `max_{m>=1} |y L_m' - (m L_m - (m + theta) L_{m-1})|`
    pub y_derivative: f64,
    /// `max_m |L_m' + L_{m-1}^(theta+1)|`, derivative by central differences
    pub lowering_vs_finite_difference: f64,
}

impl DerivativeIdentityReport {
    pub fn max(&self) -> f64 {
        self.connection.max(self.y_derivative).max(self.lowering_vs_finite_difference)
    }
}

/// `d/dy L_m^(theta) = -L_{m-1}^(theta+1)` (zero for `m = 0`).
pub fn laguerre_derivative(theta: f64, m: usize, y: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(derivative_unchecked(theta, m, y))
}

pub(crate) fn derivative_unchecked(theta: f64, m: usize, y: f64) -> f64 {
    if m == 0 {
        0.0
    } else {
        -laguerre_unchecked(theta + 1.0, m - 1, y)
    }
}

/// Checks the connection, `y`-derivative and degree-lowering identities for
/// all degrees `m <= max_degree` at the point `y`.
pub fn laguerre_derivative_identities_check(
    theta: f64,
    max_degree: usize,
    y: f64,
) -> Result<DerivativeIdentityReport> {
    check_theta(theta)?;
    let h = 1e-6 * y.abs().max(1.0);
    let mut report = DerivativeIdentityReport {
        connection: 0.0,
        y_derivative: 0.0,
        lowering_vs_finite_difference: 0.0,
    };
    for m in 0..=max_degree {
        let l = laguerre_unchecked(theta, m, y);
        let dl = derivative_unchecked(theta, m, y);
        let dl_next = derivative_unchecked(theta, m + 1, y);
        report.connection = report.connection.max((l - (dl - dl_next)).abs());

        if m >= 1 {
            let lm1 = laguerre_unchecked(theta, m - 1, y);
            let r = y * dl - (m as f64 * l - (m as f64 + theta) * lm1);
            report.y_derivative = report.y_derivative.max(r.abs());
        }

        let fd = (laguerre_unchecked(theta, m, y + h) - laguerre_unchecked(theta, m, y - h)) / (2.0 * h);
        report.lowering_vs_finite_difference = report.lowering_vs_finite_difference.max((fd - dl).abs());
    }
    Ok(report)
}

/// Upper bound `c * kappa^(xi - zeta)` for `Gamma(kappa + xi) / Gamma(kappa + zeta)`
/// with `c = exp((xi - zeta) / (2 (kappa + zeta - 1)) + 1 / (12 (kappa + xi - 1)) + (xi - zeta)^2 / kappa)`.
pub fn gamma_ratio_bound(kappa: u32, xi: f64, zeta: f64) -> Result<f64> {
    let k = kappa as f64;
    if kappa == 0 || !(k + xi > 1.0) || !(k + zeta > 1.0) {
        return Err(invalid(format!(
            "gamma ratio bound needs kappa >= 1, kappa + xi > 1 and kappa + zeta > 1 (kappa = {kappa}, xi = {xi}, zeta = {zeta})"
        )));
    }
    let d = xi - zeta;
    let log_c = d / (2.0 * (k + zeta - 1.0)) + 1.0 / (12.0 * (k + xi - 1.0)) + d * d / k;
    Ok((log_c + d * k.ln()).exp())
}
