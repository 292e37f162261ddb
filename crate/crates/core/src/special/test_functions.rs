//! Target functions of the convergence experiments, with exact derivative
//! oracles built from Taylor jets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fractional::FracParams;
use crate::generalized::GenParams;
use crate::special::jet::Jet;
use crate::special::mittag_leffler::mittag_leffler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunctionId {
    /// `sin(x^a)`
    U1Sin,
    /// `exp(-x^a)`
    U2Exp,
    /// `x^a E_{a,a+1}(-x^a)`
    U3Ml,
    /// `sin(x) / x`
    G1Sinc,
    /// `1 / sqrt(x)`
    G2Invsqrt,
    /// `sqrt(x) e^{sqrt(x)}`
    G3Sqrtexp,
    /// `x^{-a} sin(x^a)`
    H1,
    /// `x^{-a}`
    H2,
    /// `x^a e^{x^a}`
    H3,
}

impl TestFunctionId {
    pub const ALL: [TestFunctionId; 9] = [
        TestFunctionId::U1Sin,
        TestFunctionId::U2Exp,
        TestFunctionId::U3Ml,
        TestFunctionId::G1Sinc,
        TestFunctionId::G2Invsqrt,
        TestFunctionId::G3Sqrtexp,
        TestFunctionId::H1,
        TestFunctionId::H2,
        TestFunctionId::H3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TestFunctionId::U1Sin => "u1_sin",
            TestFunctionId::U2Exp => "u2_exp",
            TestFunctionId::U3Ml => "u3_ml",
            TestFunctionId::G1Sinc => "g1_sinc",
            TestFunctionId::G2Invsqrt => "g2_invsqrt",
            TestFunctionId::G3Sqrtexp => "g3_sqrtexp",
            TestFunctionId::H1 => "h1",
            TestFunctionId::H2 => "h2",
            TestFunctionId::H3 => "h3",
        }
    }

    /// Whether the scale parameter enters the formula.
    pub fn uses_scale(&self) -> bool {
        !matches!(self, TestFunctionId::G1Sinc | TestFunctionId::G2Invsqrt | TestFunctionId::G3Sqrtexp)
    }
}

impl fmt::Display for TestFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestFunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TestFunctionId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| invalid(format!("unknown test function '{s}'")))
    }
}

/// A target function with its fractional scale `a` (ignored by the
/// `g`-functions).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub id: TestFunctionId,
    pub scale: f64,
}

impl TestFunction {
    pub fn new(id: TestFunctionId, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale <= 1.0) {
            return Err(invalid(format!("test-function scale must lie in (0, 1], got {scale}")));
        }
        Ok(TestFunction { id, scale })
    }

    pub fn label(&self) -> String {
        if self.id.uses_scale() {
            format!("{}(a={})", self.id, self.scale)
        } else {
            self.id.to_string()
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Domain { what: "test function", x });
        }
        let a = self.scale;
        Ok(match self.id {
            TestFunctionId::U1Sin => x.powf(a).sin(),
            TestFunctionId::U2Exp => (-x.powf(a)).exp(),
            TestFunctionId::U3Ml => {
                let s = x.powf(a);
                s * mittag_leffler(a, a + 1.0, -s)?
            }
            TestFunctionId::G1Sinc => x.sin() / x,
            TestFunctionId::G2Invsqrt => 1.0 / x.sqrt(),
            TestFunctionId::G3Sqrtexp => x.sqrt() * x.sqrt().exp(),
            TestFunctionId::H1 => {
                let s = x.powf(a);
                s.sin() / s
            }
            TestFunctionId::H2 => x.powf(-a),
            TestFunctionId::H3 => {
                let s = x.powf(a);
                s * s.exp()
            }
        })
    }

    /// The same formula evaluated on a jet in `x`; `None` for the
    /// Mittag-Leffler target, which has no jet oracle.
    pub fn eval_jet(&self, x: &Jet) -> Option<Jet> {
        let a = self.scale;
        Some(match self.id {
            TestFunctionId::U1Sin => x.powf(a).sin(),
            TestFunctionId::U2Exp => (-&x.powf(a)).exp(),
            TestFunctionId::U3Ml => return None,
            TestFunctionId::G1Sinc => &x.sin() * &x.recip(),
            TestFunctionId::G2Invsqrt => x.powf(-0.5),
            TestFunctionId::G3Sqrtexp => {
                let s = x.powf(0.5);
                &s * &s.exp()
            }
            TestFunctionId::H1 => {
                let s = x.powf(a);
                &s.sin() * &s.recip()
            }
            TestFunctionId::H2 => x.powf(-a),
            TestFunctionId::H3 => {
                let s = x.powf(a);
                &s * &s.exp()
            }
        })
    }

    /// `[u, u', ..., u^(order)]` at `x`.
    pub fn ordinary_derivatives(&self, x: f64, order: usize) -> Option<Vec<f64>> {
        self.eval_jet(&Jet::variable(x, order)).map(|j| j.derivatives())
    }

    /// `[u, D u, ..., D^order u]` for the mapped derivative of `params`.
    pub fn mapped_derivatives(&self, params: &FracParams, x: f64, order: usize) -> Option<Vec<f64>> {
        let xj = x_jet_in_y(params, x, order);
        self.eval_jet(&xj).map(|j| j.derivatives())
    }

    /// `[u, D_s u, ..., D_s^order u]` for the scaled derivative
    /// `D_s u = x^eta D(x^{-eta} u)` of the generalized family.
    pub fn scaled_derivatives(&self, params: &GenParams, x: f64, order: usize) -> Option<Vec<f64>> {
        let eta = params.eta();
        let xj = x_jet_in_y(&params.frac(), x, order);
        let u = self.eval_jet(&xj)?;
        let v = &u * &xj.powf(-eta);
        let pre = x.powf(eta);
        Some(v.derivatives().into_iter().map(|d| d * pre).collect())
    }
}

/// `x` as a jet in `y = (beta + 1) x^gamma` around the image of `x`.
pub fn x_jet_in_y(params: &FracParams, x: f64, order: usize) -> Jet {
    let b = params.beta + 1.0;
    let y = Jet::variable(b * x.powf(params.gamma), order);
    y.scale(1.0 / b).powf(1.0 / params.gamma)
}

/// Synthetic target `y^p e^{-y}` in the mapped variable `y = (beta+1) x^gamma`
/// (`p = None` gives the smooth `e^{-y}`); its regularity in the mapped
/// derivative scale is controlled by `p` alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MappedPowerTarget {
    pub p: Option<f64>,
    pub params: FracParams,
}

impl MappedPowerTarget {
    pub fn label(&self) -> String {
        match self.p {
            Some(p) => format!("y^{p:.6}e^-y"),
            None => "e^-y".to_string(),
        }
    }

    fn of_y(&self, y: f64) -> f64 {
        match self.p {
            Some(p) => y.powf(p) * (-y).exp(),
            None => (-y).exp(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.of_y(self.params.y(x))
    }

    /// `[u, D u, ..., D^order u]`: plain `y`-derivatives.
    pub fn mapped_derivatives(&self, x: f64, order: usize) -> Vec<f64> {
        let y = Jet::variable(self.params.y(x), order);
        let e = (-&y).exp();
        match self.p {
            Some(p) => (&y.powf(p) * &e).derivatives(),
            None => e.derivatives(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tf(id: TestFunctionId, a: f64) -> TestFunction {
        TestFunction::new(id, a).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn examples() {
        let third = 1.0 / 3.0;
        assert!(rel(tf(TestFunctionId::U2Exp, third).eval(8.0).unwrap(), (-2.0f64).exp()) < 1e-15);
        assert_eq!(tf(TestFunctionId::G2Invsqrt, 0.5).eval(4.0).unwrap(), 0.5);
        assert!(rel(tf(TestFunctionId::U3Ml, 1.0).eval(1.0).unwrap(), 1.0 - (-1.0f64).exp()) < 1e-15);
        assert!(tf(TestFunctionId::U1Sin, third).eval(0.0).is_err());
        assert!(TestFunction::new(TestFunctionId::U1Sin, 0.0).is_err());
    }

    #[test]
    fn ids_round_trip() {
        for id in TestFunctionId::ALL {
            assert_eq!(id.name().parse::<TestFunctionId>().unwrap(), id);
        }
        assert!("u4".parse::<TestFunctionId>().is_err());
    }

    #[test]
    fn jets_match_pointwise_values() {
        for id in TestFunctionId::ALL {
            let f = tf(id, 0.4);
            for &x in &[0.3, 1.0, 5.5] {
                let v = f.eval(x).unwrap();
                if let Some(d) = f.ordinary_derivatives(x, 3) {
                    assert!(rel(d[0], v) < 1e-14, "{id} at {x}");
                }
            }
        }
    }

    // Independent oracle: Richardson-extrapolated central differences.
    fn fd1(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let c = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        let h = 1e-3 * x;
        (4.0 * c(h / 2.0) - c(h)) / 3.0
    }

    #[test]
    fn first_derivatives_against_differences() {
        for id in TestFunctionId::ALL {
            let f = tf(id, 0.4);
            for &x in &[0.3, 1.0, 5.5] {
                if let Some(d) = f.ordinary_derivatives(x, 1) {
                    let fd = fd1(|s| f.eval(s).unwrap(), x);
                    assert!((d[1] - fd).abs() < 1e-8 * (1.0 + fd.abs()), "{id} at {x}: {} vs {fd}", d[1]);
                }
            }
        }
    }

    #[test]
    fn mapped_derivatives_of_power() {
        // D x^gamma = 1/(beta+1), D^2 x^gamma = 0
        let params = FracParams::new(0.0, 3.0, 0.25).unwrap();
        let xj = x_jet_in_y(&params, 2.0, 3);
        let d = xj.powf(0.25).derivatives();
        assert!(rel(d[1], 0.25) < 1e-14);
        assert!(d[2].abs() < 1e-14 && d[3].abs() < 1e-14);
        // u2 with matched scale is e^{-y/(beta+1)} in y
        let f = tf(TestFunctionId::U2Exp, 0.25);
        let md = f.mapped_derivatives(&params, 2.0, 4).unwrap();
        for (r, v) in md.iter().enumerate() {
            assert!(rel(*v, f.eval(2.0).unwrap() * (-0.25f64).powi(r as i32)) < 1e-13);
        }
    }

    #[test]
    fn scaled_derivatives_kill_the_prefactor() {
        let params = GenParams::new(0.0, 2.0, 0.5, 8.0).unwrap();
        // h2 with gamma = 1/2 equals x^eta exactly
        let f = tf(TestFunctionId::H2, 0.5);
        let d = f.scaled_derivatives(&params, 1.7, 3).unwrap();
        assert!(rel(d[0], 1.7f64.powf(-0.5)) < 1e-15);
        assert!(d[1].abs() < 1e-15 && d[2].abs() < 1e-15);
    }

    #[test]
    fn mapped_power_target() {
        let params = FracParams::new(0.0, 1.0, 0.5).unwrap();
        let t = MappedPowerTarget { p: Some(4.0 / 3.0), params };
        let x: f64 = 0.8;
        let y = params.y(x);
        let d = t.mapped_derivatives(x, 1);
        assert!(rel(d[0], t.eval(x)) < 1e-15);
        let exact = (4.0 / 3.0 * y.powf(1.0 / 3.0) - y.powf(4.0 / 3.0)) * (-y).exp();
        assert!(rel(d[1], exact) < 1e-14);
    }
}
