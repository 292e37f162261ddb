use serde::{Deserialize, Serialize};

use super::{loglog_slope, par_map_ordered, Field, RunConfig, Table};
use crate::approximation::{self, Family};
use crate::error::Result;
use crate::fractional::FracParams;
use crate::special::test_functions::MappedPowerTarget;

pub const RATE_DEGREES: (usize, usize, usize) = (16, 64, 4);
/// The `y^p` singularity aliases visibly at `Q = 256` (over 1% drift at
/// `M = 64` for `p = 4/3`), so the rate study uses a larger floor.
pub const RATE_QUADRATURE_FLOOR: usize = 1024;
/// Exponents of the finite-regularity targets `y^p e^{-y}`.
pub const RATE_EXPONENTS: [f64; 3] = [4.0 / 3.0, 7.0 / 3.0, 10.0 / 3.0];

/// Highest seminorm order examined by [`seminorm_scan`].
pub const SCAN_MAX_ORDER: usize = 8;
pub const SCAN_COARSE: usize = 256;
pub const SCAN_FINE: usize = 2048;
/// Relative change between the coarse and fine rule that marks a divergent seminorm.
pub const SCAN_JUMP: f64 = 0.2;

/// Seminorms of a target on a coarse and a fine rule; a seminorm that keeps
/// growing under refinement is taken to be infinite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeminormScan {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    /// Largest `mu` with every seminorm up to `mu` finite; `None` if all
    /// orders through [`SCAN_MAX_ORDER`] are finite.
    pub mu: Option<usize>,
}

pub fn seminorm_scan(target: &MappedPowerTarget) -> Result<SeminormScan> {
    let family = Family::Fractional(target.params);
    let oracle = |x: f64| Some(target.mapped_derivatives(x, SCAN_MAX_ORDER));
    let norms = |points: usize| -> Result<Vec<f64>> {
        (0..=SCAN_MAX_ORDER)
            .map(|r| approximation::derivative_norm(&family, r, r, points, oracle))
            .collect()
    };
    let coarse = norms(SCAN_COARSE)?;
    let fine = norms(SCAN_FINE)?;
    let first_divergent = coarse.iter().zip(&fine).position(|(c, f)| (f - c).abs() > SCAN_JUMP * f.abs());
    let mu = match first_divergent {
        Some(0) => Some(0),
        Some(r) => Some(r - 1),
        None => None,
    };
    Ok(SeminormScan { coarse, fine, mu })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub m: usize,
    pub q: usize,
    pub error: f64,
    pub drift: f64,
}

/// Fitted convergence rate of one target against the prediction `-mu/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub target: MappedPowerTarget,
    pub scan: SeminormScan,
    pub points: Vec<RatePoint>,
    pub slope: Option<f64>,
    pub predicted: Option<f64>,
}

pub fn rate_targets(config: &RunConfig) -> Result<Vec<MappedPowerTarget>> {
    let mut out = Vec::new();
    let exponents: Vec<Option<f64>> = RATE_EXPONENTS.iter().copied().map(Some).chain([None]).collect();
    for p in exponents {
        for &theta in config.theta.as_deref().unwrap_or(&[0.0]) {
            for &beta in config.beta.as_deref().unwrap_or(&[1.0, 20.0]) {
                for &gamma in config.gamma.as_deref().unwrap_or(&[0.5]) {
                    out.push(MappedPowerTarget { p, params: FracParams::new(theta, beta, gamma)? });
                }
            }
        }
    }
    Ok(out)
}

pub fn fit_rate(target: &MappedPowerTarget, degrees: &[usize], config: &RunConfig) -> Result<RateFit> {
    let u = |x: f64| target.eval(x);
    let mut points = Vec::with_capacity(degrees.len());
    for &m in degrees {
        let q = config.quadrature_size(RATE_QUADRATURE_FLOOR, m);
        let e = approximation::project(u, m, &target.params, q)?;
        let error = approximation::weighted_l2_error(u, &e, q)?;
        let e2 = approximation::project(u, m, &target.params, 2 * q)?;
        let error2 = approximation::weighted_l2_error(u, &e2, 2 * q)?;
        points.push(RatePoint { m, q, error, drift: (error2 - error).abs() });
    }
    let scan = seminorm_scan(target)?;
    let slope = loglog_slope(&points.iter().map(|p| (p.m, p.error)).collect::<Vec<_>>());
    let predicted = scan.mu.map(|mu| -(mu as f64) / 2.0);
    Ok(RateFit { target: *target, scan, points, slope, predicted })
}

pub fn rate_fits(config: &RunConfig) -> Result<Vec<RateFit>> {
    let targets = rate_targets(config)?;
    let degrees = config.degrees(RATE_DEGREES)?;
    par_map_ordered(&targets, |t| fit_rate(t, &degrees, config))
}

/// Convergence-rate study: one `point` row per degree and one `fit` row per target.
pub fn cmd_rates(config: &RunConfig) -> Result<Table> {
    let fits = rate_fits(config)?;
    let mut t = Table::new(vec![
        "row", "target", "p", "theta", "beta", "gamma", "M", "Q", "error", "drift", "mu", "predicted", "slope",
    ]);
    for f in &fits {
        let prm = f.target.params;
        let lead = |row: &str| -> Vec<Field> {
            vec![
                row.into(),
                f.target.label().into(),
                f.target.p.into(),
                prm.theta.into(),
                prm.beta.into(),
                prm.gamma.into(),
            ]
        };
        for p in &f.points {
            let mut r = lead("point");
            r.extend([p.m.into(), p.q.into(), p.error.into(), p.drift.into(), Field::Empty, Field::Empty, Field::Empty]);
            t.push(r);
        }
        let mut r = lead("fit");
        r.extend([Field::Empty, Field::Empty, Field::Empty, Field::Empty, f.scan.mu.into(), f.predicted.into(), f.slope.into()]);
        t.push(r);
    }
    Ok(t)
}
