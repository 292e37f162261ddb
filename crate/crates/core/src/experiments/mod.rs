//! Reproducible experiment drivers behind the `fraclag` binary: node
//! distributions, projection/interpolation error curves for both families,
//! convergence-rate fits and the invariant verification suite.
//!
//! Every driver is a pure function of its [`RunConfig`]; independent cells
//! run in parallel and are gathered in declaration order, so the emitted CSV
//! is byte-identical across runs and thread counts.

mod figures;
mod rates;
mod verify;

pub use figures::*;
pub use rates::*;
pub use verify::*;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::special::test_functions::TestFunctionId;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Nodes,
    ProjFrac,
    ProjGen,
    Rates,
    Verify,
}

/// Deliberate corruption used to check that `verify` can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Flip the sign of one quadrature weight in the orthogonality suites.
    WeightSign,
}

/// Everything that determines a run's output. Grid fields left `None` fall
/// back to the figure defaults of each command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub theta: Option<Vec<f64>>,
    pub sigma: Option<Vec<f64>>,
    pub beta: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
    /// Fractional scale of the target functions (defaults to the basis `gamma`).
    pub scale: Option<Vec<f64>>,
    pub m_min: Option<usize>,
    pub m_max: Option<usize>,
    pub m_step: Option<usize>,
    /// Floor for the error quadrature size; the effective size is `max(this, 4M + 64)`.
    pub oversample: Option<usize>,
    pub function: Option<Vec<TestFunctionId>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fault: Option<Fault>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            theta: None,
            sigma: None,
            beta: None,
            gamma: None,
            scale: None,
            m_min: None,
            m_max: None,
            m_step: None,
            oversample: None,
            function: None,
            fault: None,
        }
    }

    /// Whether any parameter grid was overridden (custom cells replace the figure cells).
    pub fn has_custom_grid(&self) -> bool {
        self.theta.is_some()
            || self.sigma.is_some()
            || self.beta.is_some()
            || self.gamma.is_some()
            || self.scale.is_some()
            || self.function.is_some()
    }

    pub(crate) fn degrees(&self, default: (usize, usize, usize)) -> Result<Vec<usize>> {
        let lo = self.m_min.unwrap_or(default.0);
        let hi = self.m_max.unwrap_or(default.1);
        let step = self.m_step.unwrap_or(default.2);
        if step == 0 || lo > hi {
            return Err(invalid(format!("empty degree range {lo}..={hi} step {step}")));
        }
        Ok((lo..=hi).step_by(step).collect())
    }

    pub(crate) fn quadrature_size(&self, default_floor: usize, max_degree: usize) -> usize {
        self.oversample.unwrap_or(default_floor).max(4 * max_degree + 64)
    }

    fn provenance(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        format!("# fraclag {VERSION}\n# config {json}\n")
    }
}

/// Parse a comma-separated list of reals; `p/q` fractions are accepted.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let v = match t.split_once('/') {
                Some((a, b)) => a.trim().parse::<f64>().ok().zip(b.trim().parse::<f64>().ok()).map(|(a, b)| a / b),
                None => t.parse().ok(),
            };
            v.filter(|v: &f64| v.is_finite()).ok_or_else(|| invalid(format!("'{t}' is not a real number")))
        })
        .collect()
}

/// A single CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Text(String),
    Int(i64),
    Real(f64),
    Empty,
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Text(s) => s.clone(),
            Field::Int(i) => i.to_string(),
            Field::Real(v) => format_real(*v),
            Field::Empty => String::new(),
        }
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}
impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}
impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}
impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}
impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map_or(Field::Empty, Into::into)
    }
}

/// Seventeen significant digits, round-trippable.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Fixed-header table rendered as CSV with `#` provenance lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    pub fn to_csv(&self, config: &RunConfig) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Field::render)).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
        config.provenance() + &body
    }
}

/// Result of one command: the CSV table and, for `verify`, whether every suite passed.
#[derive(Debug, Clone)]
pub struct Output {
    pub table: Table,
    pub passed: bool,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            EXIT_VERIFY_FAILURE
        }
    }
}

pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_VERIFY_FAILURE: i32 = 3;

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_validation() {
        EXIT_VALIDATION
    } else {
        EXIT_NUMERICAL
    }
}

/// Run whichever command the config names.
pub fn run(config: &RunConfig) -> Result<Output> {
    let table = match config.command {
        Command::Nodes => cmd_nodes(config)?,
        Command::ProjFrac => cmd_proj_frac(config)?,
        Command::ProjGen => cmd_proj_gen(config)?,
        Command::Rates => cmd_rates(config)?,
        Command::Verify => {
            let report = cmd_verify(config)?;
            return Ok(Output { passed: report.passed(), table: report.to_table() });
        }
    };
    Ok(Output { table, passed: true })
}

/// Map cells in parallel, keeping declaration order; the first failing cell
/// in that order determines the error, independent of scheduling.
pub(crate) fn par_map_ordered<C: Sync, R: Send>(cells: &[C], f: impl Fn(&C) -> Result<R> + Sync) -> Result<Vec<R>> {
    let results: Vec<Result<R>> = cells.par_iter().map(|c| f(c)).collect();
    results.into_iter().collect()
}

/// Least-squares slope of `ln e` against `ln M`.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(_, e)| *e > 0.0).map(|&(m, e)| ((m as f64).ln(), e.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_lists() {
        assert_eq!(parse_real_list("1, 0.5,1/3").unwrap(), vec![1.0, 0.5, 1.0 / 3.0]);
        assert!(parse_real_list("1,x").is_err());
        assert!(parse_real_list("1/0").is_err());
    }

    #[test]
    fn real_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0] {
            let s = format_real(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_real(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(usize, f64)> = (2..20).map(|m| (m, 3.0 * (m as f64).powf(-1.75))).collect();
        assert!((loglog_slope(&pts).unwrap() + 1.75).abs() < 1e-12);
        assert_eq!(loglog_slope(&[(4, 1.0)]), None);
    }

    #[test]
    fn degree_ranges() {
        let mut c = RunConfig::new(Command::ProjFrac);
        assert_eq!(c.degrees((4, 12, 4)).unwrap(), vec![4, 8, 12]);
        c.m_step = Some(0);
        assert!(c.degrees((4, 12, 4)).is_err());
        assert_eq!(c.quadrature_size(256, 64), 320);
    }

    #[test]
    fn csv_has_provenance_and_fixed_header() {
        let c = RunConfig::new(Command::Nodes);
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec!["x".into(), 0.25.into()]);
        let s = t.to_csv(&c);
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# fraclag "));
        assert!(lines[1].starts_with("# config {\"command\":\"nodes\""));
        assert_eq!(lines[2], "a,b");
        assert_eq!(lines[3], "x,2.5000000000000000e-1");
    }
}
