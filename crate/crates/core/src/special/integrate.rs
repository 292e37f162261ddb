//! Adaptive Gauss-Legendre quadrature on finite intervals.

use std::sync::OnceLock;

use crate::tridiag::symmetric_tridiagonal_eigen;

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Gauss-Legendre rule on `[-1, 1]` from the Legendre Jacobi matrix.
fn legendre_rule(n: usize) -> Rule {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let eig = symmetric_tridiagonal_eigen(&diag, &off).expect("Legendre Jacobi matrix is well conditioned");
    let weights = eig.first_components.iter().map(|z| 2.0 * z * z).collect();
    Rule { nodes: eig.values, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (legendre_rule(10), legendre_rule(20)))
}

fn apply(rule: &Rule, f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    h * rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(t, w)| w * f(c + h * t))
        .sum::<f64>()
}

/// Result of [`integrate`]: the value and whether every panel met the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

const MAX_DEPTH: u32 = 40;

/// `int_a^b f` by recursive bisection until the 10- and 20-point Gauss-Legendre
/// estimates of each panel agree to `rel_tol * |total|` (first estimated on
/// the whole interval) or to `abs_tol`, whichever is larger.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Integral {
    let (g10, g20) = rules();
    let whole = apply(g20, &f, a, b).abs();
    let mut out = Integral { value: 0.0, error: 0.0, converged: true };
    let mut stack = vec![(a, b, 0u32)];
    // rough scale; refined as panels complete
    let mut scale = whole;
    while let Some((lo, hi, depth)) = stack.pop() {
        let coarse = apply(g10, &f, lo, hi);
        let fine = apply(g20, &f, lo, hi);
        let err = (fine - coarse).abs();
        let tol = (rel_tol * scale.max(out.value.abs())).max(abs_tol) * ((hi - lo) / (b - a)).max(1e-3);
        if err <= tol || depth >= MAX_DEPTH {
            if err > tol {
                out.converged = false;
            }
            out.value += fine;
            out.error += err;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
        scale = scale.max(out.value.abs());
    }
    out
}

/// [`integrate`] over consecutive panels `[points[k], points[k+1]]`.
pub fn integrate_breakpoints(f: impl Fn(f64) -> f64, points: &[f64], rel_tol: f64, abs_tol: f64) -> Integral {
    let mut out = Integral { value: 0.0, error: 0.0, converged: true };
    for w in points.windows(2) {
        if w[1] > w[0] {
            let part = integrate(&f, w[0], w[1], rel_tol, abs_tol);
            out.value += part.value;
            out.error += part.error;
            out.converged &= part.converged;
        }
    }
    out
}
