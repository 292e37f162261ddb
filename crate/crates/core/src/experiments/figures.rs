use serde::{Deserialize, Serialize};

use super::{par_map_ordered, RunConfig, Table};
use crate::approximation::{self, Family};
use crate::error::Result;
use crate::fractional::{frac_quadrature, FracParams};
use crate::generalized::GenParams;
use crate::special::test_functions::{TestFunction, TestFunctionId};
use crate::special::gamma::gamma;

/// Degree used for the node-distribution panels.
pub const NODES_DEGREE: usize = 80;
/// Default degree range `(min, max, step)` of the projection figures.
pub const FIGURE_DEGREES: (usize, usize, usize) = (4, 64, 4);
/// Default floor of the error quadrature size.
pub const FIGURE_QUADRATURE_FLOOR: usize = 256;

const THIRD: f64 = 1.0 / 3.0;

#[derive(Debug, Clone, PartialEq)]
struct NodeCell {
    panel: &'static str,
    sweep_value: Option<f64>,
    params: FracParams,
}

fn node_cells(config: &RunConfig) -> Result<Vec<NodeCell>> {
    let mut cells = Vec::new();
    if config.has_custom_grid() {
        for &theta in config.theta.as_deref().unwrap_or(&[0.0]) {
            for &beta in config.beta.as_deref().unwrap_or(&[20.0]) {
                for &gamma in config.gamma.as_deref().unwrap_or(&[THIRD]) {
                    cells.push(NodeCell { panel: "custom", sweep_value: None, params: FracParams::new(theta, beta, gamma)? });
                }
            }
        }
        return Ok(cells);
    }
    for beta in [1.0, 5.0, 20.0] {
        cells.push(NodeCell { panel: "beta", sweep_value: Some(beta), params: FracParams::new(0.0, beta, THIRD)? });
    }
    for theta in [-0.5, 0.0, 1.0, 2.0] {
        cells.push(NodeCell { panel: "theta", sweep_value: Some(theta), params: FracParams::new(theta, 20.0, THIRD)? });
    }
    for gamma in [0.25, THIRD, 0.5, 1.0] {
        cells.push(NodeCell { panel: "gamma", sweep_value: Some(gamma), params: FracParams::new(0.0, 20.0, gamma)? });
    }
    Ok(cells)
}

/// Mapped Gauss nodes for the node-distribution panels (`M = 80`, or `--m-max`).
pub fn cmd_nodes(config: &RunConfig) -> Result<Table> {
    let m = config.m_max.unwrap_or(NODES_DEGREE);
    let cells = node_cells(config)?;
    let rules = par_map_ordered(&cells, |c| frac_quadrature(&c.params, m))?;
    let mut table = Table::new(vec!["panel", "sweep_value", "theta", "beta", "gamma", "M", "index", "x"]);
    for (c, q) in cells.iter().zip(rules) {
        for (i, &x) in q.x_nodes.iter().enumerate() {
            table.push(vec![
                c.panel.into(),
                c.sweep_value.into(),
                c.params.theta.into(),
                c.params.beta.into(),
                c.params.gamma.into(),
                m.into(),
                i.into(),
                x.into(),
            ]);
        }
    }
    Ok(table)
}

/// Whether a cell belongs to a figure or is an extra comparison run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Figure,
    /// Same target approximated with `gamma = 1`, for the ordering checks.
    Reference,
}

impl Role {
    fn name(&self) -> &'static str {
        match self {
            Role::Figure => "figure",
            Role::Reference => "reference",
        }
    }
}

/// One target/basis combination of a projection study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjCell {
    pub figure: String,
    pub panel: String,
    pub role: Role,
    pub function: TestFunction,
    pub family: Family,
}

/// Errors of one cell at one degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub m: usize,
    /// Error quadrature size.
    pub q: usize,
    pub projection_error: f64,
    /// `|error(2Q) - error(Q)|`.
    pub drift: f64,
    pub interpolation_error: f64,
    /// Quadrature error of the `M`-order rule (on `x^{-eta} u` for the generalized family).
    pub quadrature_error: f64,
    /// `sqrt(Gamma(theta + 1))` times the interpolation error.
    pub quadrature_bound: f64,
    /// Rounding allowance for the quadrature comparison.
    pub quadrature_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCurve {
    pub label: String,
    pub cell: ProjCell,
    pub points: Vec<CurvePoint>,
}

impl ErrorCurve {
    pub fn error_at(&self, m: usize) -> Option<f64> {
        self.points.iter().find(|p| p.m == m).map(|p| p.projection_error)
    }
}

fn tf(id: TestFunctionId, scale: f64) -> Result<TestFunction> {
    TestFunction::new(id, scale)
}

fn frac_cell(figure: &str, panel: &str, function: TestFunction, params: FracParams) -> ProjCell {
    ProjCell {
        figure: figure.into(),
        panel: panel.into(),
        role: Role::Figure,
        function,
        family: Family::Fractional(params),
    }
}

fn gen_cell(figure: &str, panel: &str, role: Role, function: TestFunction, params: GenParams) -> ProjCell {
    ProjCell { figure: figure.into(), panel: panel.into(), role, function, family: Family::Generalized(params) }
}

const FRAC_TARGETS: [TestFunctionId; 3] = [TestFunctionId::U1Sin, TestFunctionId::U2Exp, TestFunctionId::U3Ml];

/// Cells of the fractional projection figures: basis `gamma` sweeps at
/// target scales 1/3 and 1/4, and a `beta` sweep at scale 2/3.
pub fn frac_figure_cells() -> Result<Vec<ProjCell>> {
    let mut cells = Vec::new();
    for id in FRAC_TARGETS {
        for gamma in [1.0, 1.0 / 6.0, THIRD] {
            cells.push(frac_cell("frac-gamma-third", id.name(), tf(id, THIRD)?, FracParams::new(0.0, 20.0, gamma)?));
        }
    }
    for id in FRAC_TARGETS {
        for beta in [1.0, 5.0, 20.0] {
            cells.push(frac_cell("frac-beta", id.name(), tf(id, 2.0 / 3.0)?, FracParams::new(0.0, beta, 2.0 / 3.0)?));
        }
    }
    for id in FRAC_TARGETS {
        for gamma in [1.0, 0.25, 0.125] {
            cells.push(frac_cell("frac-gamma-quarter", id.name(), tf(id, 0.25)?, FracParams::new(0.0, 20.0, gamma)?));
        }
    }
    Ok(cells)
}

/// Cells of the generalized figures. The `gamma` sweeps match the target
/// scale to the basis; each mismatched comparison (`gamma = 1` basis for a
/// target scale below one) is added with [`Role::Reference`].
pub fn gen_figure_cells() -> Result<Vec<ProjCell>> {
    use TestFunctionId::*;
    let mut cells = Vec::new();
    let beta_panels: [(TestFunctionId, f64, f64, f64, [f64; 3]); 3] = [
        (G1Sinc, 0.0, 2.0, 1.0, [1.0, 16.0, 24.0]),
        (G2Invsqrt, 0.0, 2.0, 0.5, [1.0, 8.0, 16.0]),
        (G3Sqrtexp, 2.0, 0.0, 0.5, [4.0, 16.0, 24.0]),
    ];
    for (id, theta, sigma, gamma, betas) in beta_panels {
        for beta in betas {
            cells.push(gen_cell("gen-beta", id.name(), Role::Figure, tf(id, 1.0)?, GenParams::new(theta, sigma, gamma, beta)?));
        }
    }
    let gamma_panels: [(TestFunctionId, f64, f64, f64, [f64; 3]); 3] = [
        (H1, 0.0, 2.0, 16.0, [0.25, 0.5, 1.0]),
        (H2, 0.0, 2.0, 8.0, [0.25, 0.5, 1.0]),
        (H3, 2.0, 0.0, 16.0, [0.5, 2.0 / 3.0, 1.0]),
    ];
    for (id, theta, sigma, beta, gammas) in gamma_panels {
        for gamma in gammas {
            let f = tf(id, gamma)?;
            cells.push(gen_cell("gen-gamma", id.name(), Role::Figure, f, GenParams::new(theta, sigma, gamma, beta)?));
        }
        for gamma in gammas.into_iter().filter(|&g| g < 1.0) {
            let f = tf(id, gamma)?;
            cells.push(gen_cell("gen-gamma", id.name(), Role::Reference, f, GenParams::new(theta, sigma, 1.0, beta)?));
        }
    }
    Ok(cells)
}

fn custom_cells(config: &RunConfig, generalized: bool) -> Result<Vec<ProjCell>> {
    let default_fns: &[TestFunctionId] = if generalized {
        &[TestFunctionId::H1, TestFunctionId::H2, TestFunctionId::H3]
    } else {
        &FRAC_TARGETS
    };
    let default_sigma = [2.0];
    let mut cells = Vec::new();
    for &id in config.function.as_deref().unwrap_or(default_fns) {
        for &theta in config.theta.as_deref().unwrap_or(&[0.0]) {
            let sigmas: &[f64] = if generalized { config.sigma.as_deref().unwrap_or(&default_sigma) } else { &[f64::NAN] };
            for &sigma in sigmas {
                for &beta in config.beta.as_deref().unwrap_or(&[if generalized { 8.0 } else { 20.0 }]) {
                    for &gamma in config.gamma.as_deref().unwrap_or(&[if generalized { 0.5 } else { THIRD }]) {
                        let scales = config.scale.clone().unwrap_or_else(|| vec![gamma]);
                        for scale in scales {
                            let f = tf(id, scale)?;
                            cells.push(if generalized {
                                gen_cell("custom", id.name(), Role::Figure, f, GenParams::new(theta, sigma, gamma, beta)?)
                            } else {
                                frac_cell("custom", id.name(), f, FracParams::new(theta, beta, gamma)?)
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(cells)
}

/// Error curve of one cell over the configured degrees.
pub fn run_cell(cell: &ProjCell, degrees: &[usize], config: &RunConfig) -> Result<ErrorCurve> {
    let f = cell.function;
    let u = |x: f64| f.eval(x).unwrap_or(f64::NAN);
    let family = cell.family;
    let mut points = Vec::with_capacity(degrees.len());
    for &m in degrees {
        let q = config.quadrature_size(FIGURE_QUADRATURE_FLOOR, m);
        let proj = approximation::project_family(u, m, &family, q)?;
        let err = approximation::weighted_l2_error(u, &proj, q)?;
        let proj2 = approximation::project_family(u, m, &family, 2 * q)?;
        let err2 = approximation::weighted_l2_error(u, &proj2, 2 * q)?;
        let interp = approximation::interpolate_family(u, m, &family)?;
        let interp_err = approximation::weighted_l2_error(u, &interp, q)?;
        let (quad, slack) = quadrature_gap(&family, u, m, q)?;
        points.push(CurvePoint {
            m,
            q,
            projection_error: err,
            drift: (err2 - err).abs(),
            interpolation_error: interp_err,
            quadrature_error: quad,
            quadrature_bound: approximation::quadrature_error_bound(family.theta(), interp_err)?,
            quadrature_slack: slack,
        });
    }
    Ok(ErrorCurve { label: format!("{} {}", cell.figure, f.label()), cell: cell.clone(), points })
}

/// `|sum_{M-rule} w z - sum_{Q-rule} w z|` for `z = x^{-eta} u` on the
/// fractional rule, with the `Q`-point sum standing in for the integral (the
/// same rule measures the interpolation error, so the discrete Cauchy-Schwarz
/// argument applies verbatim). Also returns a rounding allowance: per rule,
/// `(64 eps + mass defect) sum |w z|`, where the mass defect
/// `|sum w / Gamma(theta+1) - 1|` is the rule's own measured weight rounding.
/// Once `u` is resolved, that defect is the whole difference between the sums.
fn quadrature_gap(family: &Family, u: impl Fn(f64) -> f64, m: usize, q: usize) -> Result<(f64, f64)> {
    let frac = Family::Fractional(family.frac());
    let z = |x: f64| match family {
        Family::Fractional(_) => u(x),
        Family::Generalized(g) => u(x) / g.prefactor(x),
    };
    let mass = gamma(family.theta() + 1.0);
    let sums = |points: usize| -> Result<(f64, f64)> {
        let rule = frac.rule(points)?;
        let defect = (rule.weights.iter().sum::<f64>() / mass - 1.0).abs();
        let vals = rule.sample(&z)?;
        let mut s = 0.0;
        let mut a = 0.0;
        for (i, v) in vals.iter().enumerate() {
            let t = rule.weighted(i, *v);
            s += t;
            a += t.abs();
        }
        Ok((s, (64.0 * f64::EPSILON + defect) * a))
    };
    let (sm, slack_m) = sums(m + 1)?;
    let (sq, slack_q) = sums(q)?;
    // The family's interpolation error equals the fractional norm of
    // x^{-eta}(I u - u), so the bound carries over unchanged.
    Ok(((sm - sq).abs(), slack_m + slack_q))
}

fn curves_table(curves: &[ErrorCurve]) -> Table {
    let mut t = Table::new(vec![
        "figure",
        "panel",
        "role",
        "function",
        "scale",
        "theta",
        "sigma",
        "beta",
        "gamma",
        "M",
        "Q",
        "proj_error",
        "drift",
        "interp_error",
        "quad_error",
        "quad_bound",
        "quad_slack",
    ]);
    for c in curves {
        let (theta, sigma, beta, gamma) = match c.cell.family {
            Family::Fractional(p) => (p.theta, None, p.beta, p.gamma),
            Family::Generalized(p) => (p.theta, Some(p.sigma), p.beta, p.gamma),
        };
        for p in &c.points {
            t.push(vec![
                c.cell.figure.clone().into(),
                c.cell.panel.clone().into(),
                c.cell.role.name().into(),
                c.cell.function.id.name().into(),
                c.cell.function.scale.into(),
                theta.into(),
                sigma.into(),
                beta.into(),
                gamma.into(),
                p.m.into(),
                p.q.into(),
                p.projection_error.into(),
                p.drift.into(),
                p.interpolation_error.into(),
                p.quadrature_error.into(),
                p.quadrature_bound.into(),
                p.quadrature_slack.into(),
            ]);
        }
    }
    t
}

/// Error curves of the fractional projection study (figure cells, or the
/// custom grid when any parameter list is given).
pub fn proj_frac_curves(config: &RunConfig) -> Result<Vec<ErrorCurve>> {
    let cells = if config.has_custom_grid() { custom_cells(config, false)? } else { frac_figure_cells()? };
    let degrees = config.degrees(FIGURE_DEGREES)?;
    par_map_ordered(&cells, |c| run_cell(c, &degrees, config))
}

/// Error curves of the generalized projection study.
pub fn proj_gen_curves(config: &RunConfig) -> Result<Vec<ErrorCurve>> {
    let cells = if config.has_custom_grid() { custom_cells(config, true)? } else { gen_figure_cells()? };
    let degrees = config.degrees(FIGURE_DEGREES)?;
    par_map_ordered(&cells, |c| run_cell(c, &degrees, config))
}

pub fn cmd_proj_frac(config: &RunConfig) -> Result<Table> {
    Ok(curves_table(&proj_frac_curves(config)?))
}

pub fn cmd_proj_gen(config: &RunConfig) -> Result<Table> {
    Ok(curves_table(&proj_gen_curves(config)?))
}
